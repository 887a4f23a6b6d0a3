//! Combinatorial wall-crossing: `M̃_{r/s}` folds the transposed generalized
//! Mullineux involution over the walls below `r/s`; `M̃'_{r/s}` folds `M'`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::farey::{farey_sequence, walls_below, Fraction};
use crate::mullineux::{mprime, Mullineux};
use crate::partition::Partition;

/// Where the transpose sits in `M^t_e`. Only [`TransposeOrder::AfterMullineux`]
/// sends `(1^p)` to `(p)` at a wall of denominator `p`; the other order is
/// kept for experiments.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum TransposeOrder {
    #[default]
    AfterMullineux,
    BeforeMullineux,
}

/// Crossing a wall of denominator `e`: `transpose(M_e(λ))`.
pub fn cross(engine: &Mullineux, lambda: &Partition, e: usize) -> Result<Partition> {
    cross_with(engine, lambda, e, TransposeOrder::AfterMullineux)
}

pub fn cross_with(
    engine: &Mullineux,
    lambda: &Partition,
    e: usize,
    order: TransposeOrder,
) -> Result<Partition> {
    match order {
        TransposeOrder::AfterMullineux => Ok(engine.general(lambda, e)?.transpose()),
        TransposeOrder::BeforeMullineux => engine.general(&lambda.transpose(), e),
    }
}

fn check_size(lambda: &Partition, n: usize) -> Result<()> {
    if lambda.size() != n {
        return Err(Error::Domain(format!(
            "{lambda} has size {}, expected {n}",
            lambda.size()
        )));
    }
    Ok(())
}

fn wall_e(wall: Fraction) -> usize {
    wall.denominator() as usize
}

/// `M̃_{f}(λ)`: crosses every wall of order `n` strictly below `f`.
pub fn mtilde(engine: &Mullineux, lambda: &Partition, n: usize, f: Fraction) -> Result<Partition> {
    check_size(lambda, n)?;
    walls_below(n as u64, f)?
        .into_iter()
        .try_fold(lambda.clone(), |state, w| cross(engine, &state, wall_e(w)))
}

/// `M̃'_{f}(λ)`: applies `M'` at every wall of order `n` strictly below `f`.
pub fn mtilde_prime(lambda: &Partition, n: usize, f: Fraction) -> Result<Partition> {
    check_size(lambda, n)?;
    walls_below(n as u64, f)?
        .into_iter()
        .try_fold(lambda.clone(), |state, w| mprime(&state, wall_e(w)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallState {
    pub wall: Fraction,
    pub after: Partition,
}

/// The state after every wall of `F_n`, in increasing wall order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trajectory {
    pub n: usize,
    pub start: Partition,
    pub steps: Vec<WallState>,
}

impl Trajectory {
    fn position(&self, wall: Fraction) -> Option<usize> {
        self.steps.binary_search_by(|s| s.wall.cmp(&wall)).ok()
    }

    /// State just left of `wall`: the fold over walls strictly below it.
    pub fn state_before(&self, wall: Fraction) -> Option<&Partition> {
        let idx = self.position(wall)?;
        Some(match idx {
            0 => &self.start,
            _ => &self.steps[idx - 1].after,
        })
    }

    /// State just right of `wall`: the fold including `wall`.
    pub fn state_after(&self, wall: Fraction) -> Option<&Partition> {
        self.position(wall).map(|idx| &self.steps[idx].after)
    }

    /// Final state after the last wall.
    pub fn last(&self) -> &Partition {
        self.steps.last().map_or(&self.start, |s| &s.after)
    }

    /// Steps whose wall lies in `[lo, hi)`.
    pub fn window(&self, lo: Fraction, hi: Fraction) -> &[WallState] {
        let from = self.steps.partition_point(|s| s.wall < lo);
        let to = self.steps.partition_point(|s| s.wall < hi);
        &self.steps[from..to]
    }

    pub fn change_points(&self) -> Vec<WallState> {
        change_points(self)
    }
}

/// Steps where the state differs from the one before.
pub fn change_points(t: &Trajectory) -> Vec<WallState> {
    let mut prev = &t.start;
    let mut out = Vec::new();
    for step in &t.steps {
        if step.after != *prev {
            out.push(step.clone());
        }
        prev = &step.after;
    }
    out
}

pub fn full_trajectory(engine: &Mullineux, lambda: &Partition, n: usize) -> Result<Trajectory> {
    full_trajectory_with(engine, lambda, n, TransposeOrder::AfterMullineux)
}

pub fn full_trajectory_with(
    engine: &Mullineux,
    lambda: &Partition,
    n: usize,
    order: TransposeOrder,
) -> Result<Trajectory> {
    trajectory_by(lambda, n, |state, e| cross_with(engine, state, e, order))
}

/// The analogous trajectory for `M'`.
pub fn full_prime_trajectory(lambda: &Partition, n: usize) -> Result<Trajectory> {
    trajectory_by(lambda, n, mprime)
}

fn trajectory_by(
    lambda: &Partition,
    n: usize,
    mut step: impl FnMut(&Partition, usize) -> Result<Partition>,
) -> Result<Trajectory> {
    check_size(lambda, n)?;
    let mut state = lambda.clone();
    let mut steps = Vec::new();
    for wall in farey_sequence(n as u64) {
        state = step(&state, wall_e(wall))?;
        steps.push(WallState {
            wall,
            after: state.clone(),
        });
    }
    Ok(Trajectory {
        n,
        start: lambda.clone(),
        steps,
    })
}

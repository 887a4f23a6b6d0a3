//! Closed-form prediction of wall-crossing for the column partition `(1^p)`,
//! `p` prime, inside each interval `(m/p, (m+1)/p)`.
//!
//! Every state is a two-step partition `(a^c, b^d)`. Right of the first wall
//! `f/g` past `m/p` the state is `((g−1)^x, y)` with `p = (g−1)x + y`; after
//! that each change sends `(a^c, b^d)` to `((a−b)^{c(k+1)+dk}, l^{c+d})` where
//! `b = k(a−b) + l`. The wall left of `(a^c, b^d)` has denominator `a + d`,
//! the wall right of it `c + d + a − b`, and a denominator picks out a unique
//! fraction of the interval.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::farey::{next_right, unique_with_denominator, Fraction};
use crate::partition::Partition;
use crate::wallcross::WallState;

pub fn is_prime(n: usize) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

pub fn primes_up_to(bound: usize) -> Vec<usize> {
    (2..=bound).filter(|&n| is_prime(n)).collect()
}

/// `(a^c, b^d)` with `a > b ≥ 0`, `c ≥ 1`, and `d = 0` exactly when `b = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TwoStep {
    pub a: usize,
    pub c: usize,
    pub b: usize,
    pub d: usize,
}

impl TwoStep {
    pub fn new(a: usize, c: usize, b: usize, d: usize) -> Result<Self> {
        if a <= b || c == 0 || (b == 0) != (d == 0) {
            return Err(Error::Domain(format!(
                "({a}^{c}, {b}^{d}) is not a two-step partition"
            )));
        }
        Ok(TwoStep { a, c, b, d })
    }

    /// The single block `(a^c)`.
    pub fn single(a: usize, c: usize) -> Self {
        TwoStep { a, c, b: 0, d: 0 }
    }

    pub fn size(&self) -> usize {
        self.a * self.c + self.b * self.d
    }

    /// One block only; the recurrence stops here.
    pub fn is_terminal(&self) -> bool {
        self.b == 0
    }

    pub fn to_partition(&self) -> Partition {
        Partition::from_runs([(self.a, self.c), (self.b, self.d)])
    }

    /// `(k, l)` with `b = k(a − b) + l`, `0 ≤ l < a − b`.
    pub fn division(&self) -> (usize, usize) {
        let gap = self.a - self.b;
        (self.b / gap, self.b % gap)
    }

    pub fn step(&self) -> Result<TwoStep> {
        if self.is_terminal() {
            return Err(Error::Domain(format!("{self} has no second block to step")));
        }
        let (k, l) = self.division();
        let (a, c, d) = (self.a, self.c, self.d);
        let mult = c * (k + 1) + d * k;
        Ok(if l == 0 {
            TwoStep::single(a - self.b, mult)
        } else {
            TwoStep {
                a: a - self.b,
                c: mult,
                b: l,
                d: c + d,
            }
        })
    }

    /// Denominators of the change walls left and right of this state:
    /// `(a + d, c + d + a − b)`.
    pub fn wall_denominators(&self) -> (usize, usize) {
        (self.a + self.d, self.c + self.d + self.a - self.b)
    }
}

impl fmt::Display for TwoStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_partition())
    }
}

fn check_prime_interval(p: usize, m: usize) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::Domain(format!("{p} is not prime")));
    }
    if m == 0 || m >= p {
        return Err(Error::Domain(format!("m = {m} outside 1..{p}")));
    }
    Ok(())
}

fn frac(num: usize, den: usize) -> Fraction {
    Fraction::reduced(num as u64, den as u64).expect("fraction in (0, 1]")
}

/// First change past `m/p`: the wall `f/g = next_right(m/p)` and the state
/// `((g−1)^x, y)`. `None` when `m/p` is the last wall.
pub fn initial_step(p: usize, m: usize) -> Result<Option<(Fraction, TwoStep)>> {
    check_prime_interval(p, m)?;
    let wall = match next_right(p as u64, frac(m, p)) {
        Ok(w) => w,
        Err(Error::Range(_)) => return Ok(None),
        Err(other) => return Err(other),
    };
    let g = wall.denominator() as usize;
    let (x, y) = (p / (g - 1), p % (g - 1));
    let state = if y == 0 {
        TwoStep::single(g - 1, x)
    } else {
        TwoStep::new(g - 1, x, y, 1)?
    };
    Ok(Some((wall, state)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredictedEntry {
    pub wall: Fraction,
    pub state: TwoStep,
}

/// Change walls and states from `m/p` up to the return of `(1^p)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredictedTrajectory {
    pub p: usize,
    pub m: usize,
    pub entries: Vec<PredictedEntry>,
}

impl PredictedTrajectory {
    pub fn wall_states(&self) -> Vec<WallState> {
        self.entries
            .iter()
            .map(|e| WallState {
                wall: e.wall,
                after: e.state.to_partition(),
            })
            .collect()
    }
}

pub fn predict_interval(p: usize, m: usize) -> Result<PredictedTrajectory> {
    check_prime_interval(p, m)?;
    let (lo, hi) = (frac(m, p), frac(m + 1, p));
    let mut entries = vec![PredictedEntry {
        wall: lo,
        state: TwoStep::single(p, 1),
    }];
    let Some((wall, mut state)) = initial_step(p, m)? else {
        return Ok(PredictedTrajectory { p, m, entries });
    };
    entries.push(PredictedEntry { wall, state });
    while !state.is_terminal() {
        let (_, right) = state.wall_denominators();
        let wall = unique_with_denominator(right as u64, lo, hi).map_err(|err| {
            Error::Prediction(format!("p = {p}, m = {m}: wall right of {state}: {err}"))
        })?;
        let last = entries.last().expect("non-empty").wall;
        if wall <= last {
            return Err(Error::Prediction(format!(
                "p = {p}, m = {m}: wall {wall} right of {state} is not past {last}"
            )));
        }
        state = state.step()?;
        entries.push(PredictedEntry { wall, state });
    }
    if state.to_partition() != Partition::column(p) {
        return Err(Error::Prediction(format!(
            "p = {p}, m = {m}: recurrence stopped at {state}, not 1^{p}"
        )));
    }
    Ok(PredictedTrajectory { p, m, entries })
}

/// Which form of the fourth equation of the system to check.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum FourthEquation {
    /// `c(k+2) + d(k+1) + (a − b) − l = g‴`
    #[default]
    Corrected,
    /// `c(k+2) + d(k+1) + a + b − l = g‴`, as typeset in the source.
    Printed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquationCheck {
    pub equation: String,
    pub lhs: i64,
    pub rhs: i64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemCheck {
    pub checks: Vec<EquationCheck>,
    /// Set when `l = 0`: the successor has one block and no third wall.
    pub fourth_skipped: bool,
}

impl SystemCheck {
    pub fn holds(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &EquationCheck> {
        self.checks.iter().filter(|c| !c.holds)
    }
}

impl fmt::Display for SystemCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let mark = if c.holds { "ok  " } else { "FAIL" };
            writeln!(f, "{mark} {}: {} vs {}", c.equation, c.lhs, c.rhs)?;
        }
        if self.fourth_skipped {
            writeln!(f, "skip fourth equation (l = 0)")?;
        }
        Ok(())
    }
}

/// Checks the four relations tying `(a^c, b^d)` to `p` and to the
/// denominators `g1`, `g2`, `g3` of the change walls left of it, right of
/// it, and one further right.
pub fn validate_system(
    t: &TwoStep,
    p: usize,
    g1: usize,
    g2: usize,
    g3: Option<usize>,
    fourth: FourthEquation,
) -> SystemCheck {
    let (a, b, c, d) = (t.a as i64, t.b as i64, t.c as i64, t.d as i64);
    let check = |equation: &str, lhs: i64, rhs: i64| EquationCheck {
        equation: equation.to_owned(),
        lhs,
        rhs,
        holds: lhs == rhs,
    };
    let mut checks = vec![
        check("ac+bd = p", a * c + b * d, p as i64),
        check("a+d = g1", a + d, g1 as i64),
        check("c+d+a-b = g2", c + d + a - b, g2 as i64),
    ];
    let mut fourth_skipped = false;
    if t.is_terminal() {
        fourth_skipped = true;
    } else {
        let (k, l) = t.division();
        let (k, l) = (k as i64, l as i64);
        if l == 0 {
            fourth_skipped = true;
        } else {
            let (label, lhs) = match fourth {
                FourthEquation::Corrected => (
                    "c(k+2)+d(k+1)+a-b-l = g3",
                    c * (k + 2) + d * (k + 1) + a - b - l,
                ),
                FourthEquation::Printed => (
                    "c(k+2)+d(k+1)+a+b-l = g3",
                    c * (k + 2) + d * (k + 1) + a + b - l,
                ),
            };
            match g3 {
                Some(g3) => checks.push(check(label, lhs, g3 as i64)),
                None => checks.push(EquationCheck {
                    equation: format!("{label} (g3 missing)"),
                    lhs,
                    rhs: 0,
                    holds: false,
                }),
            }
        }
    }
    SystemCheck {
        checks,
        fourth_skipped,
    }
}

/// Runs [`validate_system`] on every two-block state of a prediction, using
/// the predicted change walls as `g1`, `g2`, `g3`.
pub fn validate_prediction(
    t: &PredictedTrajectory,
    fourth: FourthEquation,
) -> Vec<(TwoStep, SystemCheck)> {
    let e = &t.entries;
    (1..e.len())
        .filter(|&i| !e[i].state.is_terminal())
        .map(|i| {
            let g = |j: usize| e.get(j).map(|x| x.wall.denominator() as usize);
            let check = validate_system(
                &e[i].state,
                t.p,
                g(i).unwrap_or(0),
                g(i + 1).unwrap_or(0),
                g(i + 2),
                fourth,
            );
            (e[i].state, check)
        })
        .collect()
}

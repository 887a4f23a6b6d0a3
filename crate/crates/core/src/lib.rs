//! Wall-crossing for symmetric-group representations in positive
//! characteristic, modeled combinatorially: partitions, Farey walls, the
//! Mullineux involution and its generalization, trajectories across walls,
//! a closed-form predictor for the sign representation, and exhaustive
//! verifiers.

pub mod error;
pub mod farey;
pub mod mullineux;
pub mod partition;
pub mod render;
pub mod sign;
pub mod verifier;
pub mod wallcross;

pub use error::{Error, Result};
pub use farey::Fraction;
pub use mullineux::{mprime, mullineux_general, mullineux_regular, Mullineux};
pub use partition::Partition;
pub use wallcross::{full_trajectory, mtilde, mtilde_prime, Trajectory, WallState};

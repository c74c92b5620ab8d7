//! Cotangent sums `c0(r/b)`, their asymptotic expansion, the associated
//! divisor-weighted series `g(x) = Σ_l B(l x)/l`, and equidistribution
//! statistics of `c0(r/b)/b` across a window of numerators.

pub mod arith;
pub mod asymptotics;
pub mod core_sums;
pub mod equidist;
pub mod error;
pub mod gseries;
pub mod summation;
pub mod verify;

pub use error::{Error, Result};

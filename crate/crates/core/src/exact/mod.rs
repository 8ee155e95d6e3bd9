//! Exact rational engine for the leading constants of divisor correlation
//! sums and the mean values built from them.
//!
//! All coefficients are stored as rationals multiplying `a_2 = 6/pi^2`; the
//! only irrational step is decimal rendering.

pub mod combinatorics;
pub mod constants;
pub mod correlation;
pub mod main_term;
pub mod rational;
pub mod seq;
pub mod series;
pub mod tables;

use thiserror::Error;

pub use main_term::{MainTerm, A2};
pub use rational::{Decimal, GaussianRational, Rational};
pub use seq::SeqDescriptor;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("derivative order {order} exceeds the cap {cap}")]
    OrderTooLarge { order: u32, cap: u32 },
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

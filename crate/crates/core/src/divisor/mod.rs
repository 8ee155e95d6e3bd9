//! Sieved divisor-type sequences and brute-force evaluation of the finite
//! sums whose leading terms the exact engine predicts.
//!
//! With `log` the natural logarithm,
//!
//! ```text
//! d^(mu,nu)(n) = sum_{ab=n} log^mu(a) log^nu(b),     d^(mu) = d^(mu,0),
//! alpha(n)     = d^(1,1)(n) = log(n) d^(1)(n) - d^(2)(n),
//! beta_t(n)    = sum_{ab=n} log(t/2 pi a) log(t/2 pi b)
//!              = l^2 d(n) - 2 l d^(1)(n) + alpha(n),   l = log(t/2 pi).
//! ```

mod sieve;
mod sums;

use thiserror::Error;

pub use sieve::{primes_below, smallest_prime_factors, SequenceValues, SieveTable, DEFAULT_SIEVE_CAP};
pub use sums::{
    beta_t, chebyshev_psi, check_pain, check_stylo, ramanujan_ratio, shifted_divisor_ratio, sigma_pair_table, sum_m,
    sum_t, sum_tp, IdentityResidual, RamanujanComparison,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DivisorError {
    #[error("sieve bound {bound} exceeds the configured cap {cap}")]
    OverCap { bound: u64, cap: u64 },
    #[error("sieve bound must be at least 2, got {0}")]
    TooSmall(u64),
    #[error("argument needs the sieve up to {needed}, but it only reaches {bound}")]
    OutOfRange { needed: u64, bound: u64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("routes disagree for {what}: {left} vs {right}")]
    Inconsistent { what: String, left: f64, right: f64 },
}

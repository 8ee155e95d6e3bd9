//! Exact and numerical tools for discrete moments of the derivative of the
//! Riemann zeta function at its nontrivial zeros.
//!
//! - [`exact`]: rational leading constants of divisor correlation sums and
//!   the fourth-moment mean values assembled from them.
//! - [`divisor`]: sieved arithmetic sequences and brute-force oracles for the
//!   finite sums the exact engine predicts.
//! - [`zeta`]: `zeta`, `zeta'` and `chi` in the critical strip, and zero
//!   table ingestion.
//! - [`experiments`]: sums over zeros compared with their predicted main
//!   terms.

// `!(x > y)` is the NaN-rejecting form of the range checks.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod divisor;
pub mod exact;
pub mod experiments;
pub mod numeric;
pub mod zeta;

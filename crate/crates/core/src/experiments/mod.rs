//! Sums over zeros `rho = 1/2 + i gamma` compared with their predicted main
//! terms.
//!
//! Every zero is placed on the critical line. Sums are split into
//! contiguous blocks of [`BLOCK`] zeros; each block is accumulated with
//! compensated summation and the block totals are combined in index order,
//! so results do not depend on the number of worker threads.

mod dirichlet;
mod zero_sums;

use std::collections::BTreeMap;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::divisor::DivisorError;
use crate::exact::ExactError;
use crate::numeric::ComplexSum;
use crate::zeta::ZetaError;

pub use dirichlet::{dirichlet_direct, dot, DirichletBasis, DirichletCursor};
pub use zero_sums::{
    check_bunny, corollary1_empirical, dirichlet_pair_sum, discrete_moment, landau_sum, theorem2_coefficient_f64,
    theorem2_empirical, Corollary1Empirical, DerivCache, PairSpec, Shift, RMT_PRIME_BOUND, ROUTE_TOLERANCE,
};

/// Zeros per reduction block.
pub const BLOCK: usize = 256;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExperimentError {
    #[error("T = {t} is beyond the zero table (largest ordinate {max})")]
    BeyondTable { t: f64, max: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("routes disagree for {what}: {left:e} vs {right:e} (relative {relative:e})")]
    Inconsistent { what: String, left: f64, right: f64, relative: f64 },
    #[error(transparent)]
    Zeta(#[from] ZetaError),
    #[error(transparent)]
    Divisor(#[from] DivisorError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// One height of a trend series.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrendPoint {
    pub t: f64,
    /// Zeros with `0 < gamma <= t`.
    pub zeros: usize,
    pub empirical: Complex64,
    pub predicted: Complex64,
    /// Experiment-specific comparison of `empirical` with `predicted`; see
    /// the producing function.
    pub ratio: f64,
    /// Further named quantities, e.g. normalized values and route residuals.
    pub extra: BTreeMap<String, f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentResult {
    pub experiment: String,
    pub parameters: BTreeMap<String, String>,
    /// Zero sums take every zero on the critical line.
    pub assumes_rh: bool,
    /// Strictly increasing in `t`.
    pub points: Vec<TrendPoint>,
}

impl ExperimentResult {
    pub fn new(experiment: &str, parameters: &[(&str, String)]) -> Self {
        Self {
            experiment: experiment.to_string(),
            parameters: parameters.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
            assumes_rh: true,
            points: Vec::new(),
        }
    }

    /// The point at the largest height.
    pub fn last(&self) -> &TrendPoint {
        self.points.last().expect("experiments evaluate at least one height")
    }

    pub fn ratios(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.ratio).collect()
    }

    pub fn extra(&self, key: &str) -> Vec<f64> {
        self.points.iter().map(|p| p.extra.get(key).copied().unwrap_or(f64::NAN)).collect()
    }
}

/// Checks a height grid: non-empty, strictly increasing, inside the table.
pub(crate) fn check_grid(t_grid: &[f64], max_ordinate: f64) -> Result<(), ExperimentError> {
    if t_grid.is_empty() {
        return Err(ExperimentError::InvalidArgument("empty T grid".into()));
    }
    if t_grid.windows(2).any(|w| !(w[1] > w[0])) || !(t_grid[0] > 0.0) {
        return Err(ExperimentError::InvalidArgument(format!("T grid must be positive and increasing: {t_grid:?}")));
    }
    let top = *t_grid.last().unwrap();
    if top > max_ordinate {
        return Err(ExperimentError::BeyondTable { t: top, max: max_ordinate });
    }
    Ok(())
}

/// Cumulative sums of `width` complex accumulators over indices
/// `0..ends[last]`, reported at each entry of `ends`.
///
/// Blocks are cut at multiples of [`BLOCK`] within each segment between
/// consecutive ends, reduced in parallel, and merged in order.
pub(crate) fn reduce_prefixes<F>(ends: &[usize], width: usize, f: F) -> Vec<Vec<Complex64>>
where
    F: Fn(&[usize], &mut [ComplexSum]) + Sync,
{
    let mut blocks: Vec<(usize, usize, usize)> = Vec::new(); // (segment, start, end)
    let mut start = 0;
    for (seg, &end) in ends.iter().enumerate() {
        let mut s = start;
        while s < end {
            let e = (s + BLOCK).min(end);
            blocks.push((seg, s, e));
            s = e;
        }
        start = start.max(end);
    }
    let partials: Vec<Vec<ComplexSum>> = blocks
        .par_iter()
        .map(|&(_, s, e)| {
            let mut acc = vec![ComplexSum::new(); width];
            let idx: Vec<usize> = (s..e).collect();
            f(&idx, &mut acc);
            acc
        })
        .collect();

    let mut running = vec![ComplexSum::new(); width];
    let mut out = Vec::with_capacity(ends.len());
    let mut next = 0;
    for seg in 0..ends.len() {
        while next < blocks.len() && blocks[next].0 == seg {
            for (r, p) in running.iter_mut().zip(&partials[next]) {
                r.merge(p);
            }
            next += 1;
        }
        out.push(running.iter().map(ComplexSum::sum).collect());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prefixes_are_cumulative() {
        let ends = [0, 3, 700, 700, 1000];
        let out = reduce_prefixes(&ends, 2, |idx, acc| {
            for &i in idx {
                acc[0].add(Complex64::new(1.0, 0.0));
                acc[1].add(Complex64::new(0.0, i as f64));
            }
        });
        let counts: Vec<f64> = out.iter().map(|v| v[0].re).collect();
        assert_eq!(counts, vec![0.0, 3.0, 700.0, 700.0, 1000.0]);
        assert_eq!(out[4][1].im, (0..1000).sum::<usize>() as f64);
    }

    #[test]
    fn grid_validation() {
        assert!(check_grid(&[], 10.0).is_err());
        assert!(check_grid(&[5.0, 5.0], 10.0).is_err());
        assert!(matches!(check_grid(&[5.0, 11.0], 10.0), Err(ExperimentError::BeyondTable { .. })));
        assert!(check_grid(&[5.0, 10.0], 10.0).is_ok());
    }
}

//! `zeta(s)`, `zeta'(s)` and `chi(s)` in and near the critical strip, and
//! ingestion of tables of zero ordinates.
//!
//! Euler-Maclaurin summation with cut-off `N` and `M` Bernoulli corrections:
//!
//! ```text
//! zeta(s) = sum_{n<N} n^-s + N^(1-s)/(s-1) + N^-s/2
//!         + sum_{k=1..M} B_2k/(2k)! s(s+1)...(s+2k-2) N^(-s-2k+1) + R_M,
//! |R_M|  <= |B_(2M+2)/(2M+2)! s(s+1)...(s+2M) N^(-s-2M-1)| * |s+2M+1| / (sigma+2M+1).
//! ```
//!
//! `N >= |t|/pi + 10` keeps the correction terms decreasing; `N` is then
//! enlarged until the remainder bound meets the configured target.

mod afe;
mod gamma;
mod prime_power;
mod zeros;

use num_complex::Complex64;
use thiserror::Error;

use crate::divisor::smallest_prime_factors;
use crate::exact::combinatorics::{bernoulli_numbers, factorial};
use crate::exact::rational::{to_f64, Rational};
use crate::numeric::ComplexSum;

pub use afe::{afe_residual, AfeResidual};
pub use gamma::{chi, ln_gamma};
pub use prime_power::{is_prime_power, vonmangoldt_real};
pub use zeros::{
    load_zeros, parse_zeros, rvm_estimate, rvm_tolerance, ZeroTable, ZeroTableError, WINDOW, WINDOW_MEAN_BAND,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ZetaError {
    #[error("s = {0} is the pole of zeta")]
    Pole(Complex64),
    #[error("|Im s| = {height} exceeds the configured maximum height {max}")]
    HeightOutOfRange { height: f64, max: f64 },
    #[error("Re s = {0} is below the supported strip (Re s >= -1)")]
    RealPartOutOfRange(f64),
    #[error("s = {0} is within 1e-12 of a pole of chi")]
    GammaPole(Complex64),
    #[error("remainder bound {bound:e} cannot reach the target {target:e} with cut-off at most {max_terms}")]
    ToleranceUnreachable { bound: f64, target: f64, max_terms: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvalConfig {
    pub max_height: f64,
    /// Number `M` of Bernoulli correction terms.
    pub bernoulli_terms: usize,
    pub target_abs_error: f64,
}

impl Default for EvalConfig {
    fn default() -> Self {
        Self { max_height: 1e5, bernoulli_terms: 12, target_abs_error: 1e-9 }
    }
}

/// `zeta` and `zeta'` at one point with the cut-off used.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ZetaValues {
    pub value: Complex64,
    pub deriv: Complex64,
    pub cutoff: usize,
    /// Rigorous bound on the Euler-Maclaurin remainder of `value`.
    pub remainder_bound: f64,
}

/// Evaluator state shared by all points: Bernoulli weights and a
/// smallest-prime-factor table for building `n^-s` multiplicatively.
#[derive(Clone, Debug)]
pub struct ZetaEngine {
    cfg: EvalConfig,
    /// `B_2k/(2k)!` for `k = 1..=M+1`.
    weights: Vec<f64>,
    spf: Vec<u32>,
    max_cutoff: usize,
}

impl ZetaEngine {
    pub fn new(cfg: EvalConfig) -> Result<Self, ZetaError> {
        if cfg.bernoulli_terms == 0 || cfg.bernoulli_terms > 60 {
            return Err(ZetaError::InvalidArgument(format!(
                "bernoulli_terms must be in 1..=60, got {}",
                cfg.bernoulli_terms
            )));
        }
        if !(cfg.max_height >= 0.0 && cfg.max_height.is_finite()) || !(cfg.target_abs_error > 0.0) {
            return Err(ZetaError::InvalidArgument("max_height and target_abs_error must be positive".into()));
        }
        let m = cfg.bernoulli_terms;
        let b = bernoulli_numbers(2 * m + 2);
        let weights =
            (1..=m + 1).map(|k| to_f64(&(&b[2 * k] / Rational::from_integer(factorial(2 * k as u64))))).collect();
        let max_cutoff = 4 * (cfg.max_height / std::f64::consts::PI) as usize + 1000;
        Ok(Self { cfg, weights, spf: smallest_prime_factors(max_cutoff), max_cutoff })
    }

    pub fn config(&self) -> &EvalConfig {
        &self.cfg
    }

    fn check(&self, s: Complex64) -> Result<(), ZetaError> {
        if s == Complex64::new(1.0, 0.0) {
            return Err(ZetaError::Pole(s));
        }
        if s.im.abs() > self.cfg.max_height {
            return Err(ZetaError::HeightOutOfRange { height: s.im.abs(), max: self.cfg.max_height });
        }
        if !(s.re >= -1.0) {
            return Err(ZetaError::RealPartOutOfRange(s.re));
        }
        Ok(())
    }

    /// `|B_(2M+2)/(2M+2)! s(s+1)...(s+2M) N^(-sigma-2M-1)| |s+2M+1|/(sigma+2M+1)`.
    fn remainder_bound(&self, s: Complex64, n: usize) -> f64 {
        let m = self.cfg.bernoulli_terms;
        let log_poly: f64 = (0..=2 * m).map(|j| (s + j as f64).norm().ln()).sum();
        let top = (2 * m + 1) as f64;
        let log_bound = self.weights[m].abs().ln() + log_poly - (s.re + top) * (n as f64).ln()
            + ((s + top).norm() / (s.re + top)).ln();
        log_bound.exp()
    }

    fn cutoff(&self, s: Complex64) -> Result<(usize, f64), ZetaError> {
        let mut n = (s.im.abs() / std::f64::consts::PI).ceil() as usize + 10;
        loop {
            let bound = self.remainder_bound(s, n);
            if bound <= self.cfg.target_abs_error {
                return Ok((n, bound));
            }
            let next = n + n / 4 + 1;
            if next >= self.max_cutoff {
                return Err(ZetaError::ToleranceUnreachable {
                    bound,
                    target: self.cfg.target_abs_error,
                    max_terms: self.max_cutoff,
                });
            }
            n = next;
        }
    }

    pub fn zeta(&self, s: Complex64) -> Result<Complex64, ZetaError> {
        self.evaluate(s).map(|v| v.value)
    }

    pub fn zeta_deriv(&self, s: Complex64) -> Result<Complex64, ZetaError> {
        self.evaluate(s).map(|v| v.deriv)
    }

    /// `zeta(s)` and the termwise derivative of the same Euler-Maclaurin sum.
    pub fn evaluate(&self, s: Complex64) -> Result<ZetaValues, ZetaError> {
        self.check(s)?;
        let (cutoff, remainder_bound) = self.cutoff(s)?;

        // n^-s for n < N: primes directly, composites as spf(n)^-s (n/spf(n))^-s.
        let mut pw = vec![Complex64::new(0.0, 0.0); cutoff];
        let mut value = ComplexSum::new();
        let mut deriv = ComplexSum::new();
        if cutoff > 1 {
            pw[1] = Complex64::new(1.0, 0.0);
            value.add(pw[1]);
        }
        for n in 2..cutoff {
            let p = self.spf[n] as usize;
            let ln = (n as f64).ln();
            pw[n] = if p == n { (-s * ln).exp() } else { pw[p] * pw[n / p] };
            value.add(pw[n]);
            deriv.add(-pw[n] * ln);
        }

        let nf = cutoff as f64;
        let ln_n = nf.ln();
        let n_s = (-s * ln_n).exp();
        let sm1 = s - 1.0;
        let boundary = n_s * nf / sm1;
        value.add(boundary);
        deriv.add(boundary * (-ln_n - 1.0 / sm1));
        value.add(n_s * 0.5);
        deriv.add(-n_s * (0.5 * ln_n));

        // P_k = s(s+1)...(s+2k-2) and its derivative, advanced by the product rule.
        let mut p = s;
        let mut dp = Complex64::new(1.0, 0.0);
        let mut n_pow = n_s / nf; // N^(-s-2k+1) for k = 1
        for k in 1..=self.cfg.bernoulli_terms {
            let w = self.weights[k - 1];
            value.add(p * n_pow * w);
            deriv.add((dp - p * ln_n) * n_pow * w);
            for j in [2 * k - 1, 2 * k] {
                let f = s + j as f64;
                dp = dp * f + p;
                p *= f;
            }
            n_pow /= nf * nf;
        }
        Ok(ZetaValues { value: value.sum(), deriv: deriv.sum(), cutoff, remainder_bound })
    }
}

//! Dirichlet polynomials `D_a(1/2 + it) = sum_{n <= gamma/2pi} a(n) n^(-1/2-it)`
//! evaluated at successive zero ordinates.
//!
//! `n^-s` is completely multiplicative, so only prime bases need an
//! exponential; composites are `spf(n)^-s (n/spf(n))^-s`. For real
//! coefficients `D_a(1 - rho - i delta)` is the conjugate of
//! `D_a(rho + i delta)` on the critical line.

use num_complex::Complex64;

use crate::divisor::SieveTable;
use crate::numeric::ComplexSum;

/// Static per-`n` data shared by every cursor: `log n`, `n^-1/2` and the
/// smallest prime factor.
#[derive(Clone, Copy, Debug)]
pub struct DirichletBasis<'a> {
    sieve: &'a SieveTable,
}

impl<'a> DirichletBasis<'a> {
    pub fn new(sieve: &'a SieveTable) -> Self {
        Self { sieve }
    }

    pub fn sieve(&self) -> &'a SieveTable {
        self.sieve
    }

    /// Polynomial length `floor(gamma / 2pi)`.
    pub fn length(gamma: f64) -> usize {
        let x = gamma / (2.0 * std::f64::consts::PI);
        if x < 1.0 {
            0
        } else {
            x.floor() as usize
        }
    }

    pub fn cursor(&self) -> DirichletCursor<'a> {
        DirichletCursor { basis: *self, len: 0, inv_sqrt: vec![0.0], phases: vec![Complex64::new(0.0, 0.0)] }
    }
}

/// Phases `n^(-1/2-it)` for `1 <= n <= len`, extended as the ordinate grows.
#[derive(Clone, Debug)]
pub struct DirichletCursor<'a> {
    basis: DirichletBasis<'a>,
    len: usize,
    /// `n^-1/2`, filled once per `n` as the cursor first reaches it.
    inv_sqrt: Vec<f64>,
    phases: Vec<Complex64>,
}

impl DirichletCursor<'_> {
    /// Moves to ordinate `gamma`, with the exponent shifted to `gamma + shift`.
    /// Returns phases indexed by `n` (index 0 unused). Lengths beyond the
    /// sieve panic; callers check the range first.
    pub fn advance(&mut self, gamma: f64, shift: f64) -> &[Complex64] {
        let len = DirichletBasis::length(gamma);
        assert!(len as u64 <= self.basis.sieve.bound(), "polynomial length {len} beyond the sieve");
        let have = self.inv_sqrt.len();
        if len >= have {
            let ln = self.basis.sieve.ln();
            self.inv_sqrt.extend((have..=len).map(|n| (-0.5 * ln[n]).exp()));
            self.phases.resize(len + 1, Complex64::new(0.0, 0.0));
        }
        self.len = len;
        let t = gamma + shift;
        let (ln, spf) = (self.basis.sieve.ln(), self.basis.sieve.spf());
        if len >= 1 {
            self.phases[1] = Complex64::new(1.0, 0.0);
        }
        for n in 2..=len {
            let p = spf[n] as usize;
            self.phases[n] = if p == n {
                Complex64::from_polar(self.inv_sqrt[n], -t * ln[n])
            } else {
                self.phases[p] * self.phases[n / p]
            };
        }
        &self.phases[..=len]
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }
}

/// `sum_n coeffs[n] phases[n]`, compensated.
pub fn dot(coeffs: &[f64], phases: &[Complex64]) -> Complex64 {
    let mut s = ComplexSum::new();
    for n in 1..phases.len() {
        s.add(phases[n] * coeffs[n]);
    }
    s.sum()
}

/// Reference evaluation with one exponential per term.
pub fn dirichlet_direct(coeffs: &[f64], sigma: f64, t: f64, len: usize) -> Complex64 {
    let mut s = ComplexSum::new();
    for (n, &c) in coeffs.iter().enumerate().take(len + 1).skip(1) {
        let ln = (n as f64).ln();
        s.add(Complex64::from_polar((-sigma * ln).exp() * c, -t * ln));
    }
    s.sum()
}

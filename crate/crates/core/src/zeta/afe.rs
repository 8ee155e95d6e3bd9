//! Residual of the approximate functional equation
//!
//! ```text
//! zeta'(s)^2 = D_alpha(s) + chi(s)^2 D_beta_t(1-s) + O(log^3 t),   s = sigma + it,
//! D_a(s) = sum_{n <= t/2pi} a(n) n^-s.
//! ```

use num_complex::Complex64;

use super::{chi, ZetaEngine, ZetaError};
use crate::divisor::SieveTable;
use crate::numeric::ComplexSum;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AfeResidual {
    pub t: f64,
    pub sigma: f64,
    pub zeta_deriv_sq: Complex64,
    pub d_alpha: Complex64,
    pub chi_sq_d_beta: Complex64,
    /// `|zeta'(s)^2 - D_alpha(s) - chi(s)^2 D_beta(1-s)|`.
    pub residual: f64,
    /// `residual / log^3 t`.
    pub bound_ratio: f64,
    /// `|chi(s)^2 chi(1-s)^2 - 1|`.
    pub chi_identity_error: f64,
}

pub fn afe_residual(engine: &ZetaEngine, sieve: &SieveTable, t: f64, sigma: f64) -> Result<AfeResidual, ZetaError> {
    let two_pi = 2.0 * std::f64::consts::PI;
    if !(t > two_pi) || !(0.4..=0.6).contains(&sigma) {
        return Err(ZetaError::InvalidArgument(format!(
            "need t > 2pi and sigma in [0.4, 0.6], got t = {t}, sigma = {sigma}"
        )));
    }
    let len = (t / two_pi).floor() as usize;
    if len as u64 > sieve.bound() {
        return Err(ZetaError::InvalidArgument(format!("sieve reaches {}, need {len}", sieve.bound())));
    }
    let s = Complex64::new(sigma, t);
    let zd = engine.zeta_deriv(s)?;
    let chi_s = chi(s)?;
    let chi_sq = chi_s * chi_s;
    let chi_r = chi(1.0 - s)?;
    let chi_identity_error = (chi_sq * chi_r * chi_r - 1.0).norm();

    let l = (t / two_pi).ln();
    let (ln, d, d1, alpha) = (sieve.ln(), sieve.d(), sieve.d1(), sieve.alpha());
    let mut da = ComplexSum::new();
    let mut db = ComplexSum::new();
    for n in 1..=len {
        let phase = Complex64::from_polar(1.0, -t * ln[n]);
        let beta = l * l * d[n] as f64 - 2.0 * l * d1[n] + alpha[n];
        da.add(phase * (alpha[n] * (-sigma * ln[n]).exp()));
        // n^-(1-s) = n^(sigma-1) n^(it)
        db.add(phase.conj() * (beta * ((sigma - 1.0) * ln[n]).exp()));
    }
    let zeta_deriv_sq = zd * zd;
    let d_alpha = da.sum();
    let chi_sq_d_beta = chi_sq * db.sum();
    let residual = (zeta_deriv_sq - d_alpha - chi_sq_d_beta).norm();
    Ok(AfeResidual {
        t,
        sigma,
        zeta_deriv_sq,
        d_alpha,
        chi_sq_d_beta,
        residual,
        bound_ratio: residual / t.ln().powi(3),
        chi_identity_error,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zeta::EvalConfig;

    #[test]
    fn residual_is_small_against_the_terms() {
        let engine = ZetaEngine::new(EvalConfig::default()).unwrap();
        let sieve = SieveTable::build(2000).unwrap();
        for t in [1e3, 1e4] {
            let r = afe_residual(&engine, &sieve, t, 0.5).unwrap();
            assert!(r.chi_identity_error < 1e-9);
            assert!(r.residual < r.d_alpha.norm() + r.chi_sq_d_beta.norm());
            assert!(r.bound_ratio.is_finite());
        }
        assert!(afe_residual(&engine, &sieve, 1e3, 0.7).is_err());
        assert!(afe_residual(&engine, &sieve, 1e5, 0.5).is_err());
    }
}

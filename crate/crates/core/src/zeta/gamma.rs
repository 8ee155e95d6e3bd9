//! `log Gamma` by Stirling's series after shifting the argument to
//! `Re z >= 15`, and `chi(s) = pi^(s-1/2) Gamma((1-s)/2) / Gamma(s/2)`.

use num_complex::Complex64;

use super::ZetaError;

const SHIFT_TO: f64 = 15.0;

/// `B_2k / (2k (2k-1))` for `k = 1..=10`.
const STIRLING: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
];

/// A logarithm of `Gamma(z)`, correct modulo `2 pi i` (only its exponential
/// is used). Fails within `1e-12` of a pole.
pub fn ln_gamma(z: Complex64) -> Result<Complex64, ZetaError> {
    let mut z = z;
    let mut shift = Complex64::new(0.0, 0.0);
    while z.re < SHIFT_TO {
        if z.norm() < 1e-12 {
            return Err(ZetaError::GammaPole(z));
        }
        shift += z.ln();
        z += 1.0;
    }
    let half_ln_2pi = 0.5 * (2.0 * std::f64::consts::PI).ln();
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut power = inv;
    for c in STIRLING {
        series += power * c;
        power *= inv2;
    }
    Ok((z - 0.5) * z.ln() - z + half_ln_2pi + series - shift)
}

pub fn chi(s: Complex64) -> Result<Complex64, ZetaError> {
    let ln_pi = std::f64::consts::PI.ln();
    let a = ln_gamma((1.0 - s) * 0.5).map_err(|_| ZetaError::GammaPole(s))?;
    let b = ln_gamma(s * 0.5).map_err(|_| ZetaError::GammaPole(s))?;
    Ok(((s - 0.5) * ln_pi + a - b).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn gamma_at_known_points() {
        assert!((ln_gamma(c(5.0, 0.0)).unwrap().exp() - 24.0).norm() < 1e-12);
        assert!((ln_gamma(c(0.5, 0.0)).unwrap().exp() - PI.sqrt()).norm() < 1e-13);
        // |Gamma(1/2 + it)|^2 = pi / cosh(pi t)
        let g = ln_gamma(c(0.5, 3.0)).unwrap();
        assert!(((2.0 * g.re).exp() - PI / (PI * 3.0).cosh()).abs() < 1e-15);
        // Gamma(-1/2) = -2 sqrt(pi)
        assert!((ln_gamma(c(-0.5, 0.0)).unwrap().exp() + 2.0 * PI.sqrt()).norm() < 1e-12);
        assert!(ln_gamma(c(-2.0, 0.0)).is_err());
    }

    #[test]
    fn chi_identities() {
        assert!((chi(c(0.5, 0.0)).unwrap() - 1.0).norm() < 1e-14);
        let s = c(0.5, 50.0);
        assert!((chi(s).unwrap() * chi(1.0 - s).unwrap() - 1.0).norm() < 1e-9);
        assert!((chi(c(0.5, 1e3)).unwrap().norm() - 1.0).abs() < 1e-9);
        // zeta(2) = chi(2) zeta(-1)
        let chi2 = chi(c(2.0, 0.0)).unwrap();
        assert!((chi2.re * (-1.0 / 12.0) - PI * PI / 6.0).abs() < 1e-12);
        assert!(chi(c(0.0, 0.0)).is_err());
    }
}

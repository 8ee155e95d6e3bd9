//! Homogeneous main terms in `l = log t` and `u = log p`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};

use super::combinatorics::factorial;
use super::rational::{to_f64, Rational};

/// `a_2 = 1/zeta(2) = 6/pi^2`.
pub const A2: f64 = 6.0 / (std::f64::consts::PI * std::f64::consts::PI);

/// `sum_{u+v=degree} s_uv u^u_exp l^v_exp`, optionally times `a_2`.
///
/// Keys are `(u_exp, v_exp)`: the power of `log p` first, then the power of
/// `log t`. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MainTerm {
    coeffs: BTreeMap<(u32, u32), Rational>,
    degree: u32,
    a2_normalized: bool,
}

impl MainTerm {
    pub fn zero(degree: u32, a2_normalized: bool) -> Self {
        Self { coeffs: BTreeMap::new(), degree, a2_normalized }
    }

    pub fn monomial(u_exp: u32, v_exp: u32, coeff: Rational, a2_normalized: bool) -> Self {
        let mut m = Self::zero(u_exp + v_exp, a2_normalized);
        m.add_term(u_exp, v_exp, coeff);
        m
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_a2_normalized(&self) -> bool {
        self.a2_normalized
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, u_exp: u32, v_exp: u32) -> Rational {
        self.coeffs.get(&(u_exp, v_exp)).cloned().unwrap_or_else(Rational::zero)
    }

    /// Coefficient of the pure `l^degree` term.
    pub fn leading(&self) -> Rational {
        self.coeff(0, self.degree)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &Rational)> {
        self.coeffs.iter().map(|(&(u, v), c)| (u, v, c))
    }

    /// Adds `c u^u_exp l^v_exp`. Panics if the monomial breaks homogeneity.
    pub fn add_term(&mut self, u_exp: u32, v_exp: u32, c: Rational) {
        assert_eq!(u_exp + v_exp, self.degree, "monomial u^{u_exp} l^{v_exp} in a degree-{} main term", self.degree);
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry((u_exp, v_exp)).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&(u_exp, v_exp));
        }
    }

    /// `self + k * other`. Both must share degree and normalization, except
    /// that an empty side adopts the other's.
    pub fn add_scaled(&mut self, other: &MainTerm, k: &Rational) {
        if other.is_zero() || k.is_zero() {
            return;
        }
        if self.is_zero() {
            self.degree = other.degree;
            self.a2_normalized = other.a2_normalized;
        }
        assert_eq!(self.degree, other.degree, "adding main terms of different degree");
        assert_eq!(self.a2_normalized, other.a2_normalized, "mixed a2 normalization");
        for (u, v, c) in other.terms() {
            self.add_term(u, v, c * k);
        }
    }

    pub fn scaled(&self, k: &Rational) -> MainTerm {
        let mut out = MainTerm::zero(self.degree, self.a2_normalized);
        out.add_scaled(self, k);
        out
    }

    /// Multiplies by `u^k = log^k p`.
    pub fn times_log_p(&self, k: u32) -> MainTerm {
        let mut out = MainTerm::zero(self.degree + k, self.a2_normalized);
        for (u, v, c) in self.terms() {
            out.add_term(u + k, v, c.clone());
        }
        out
    }

    /// Log-power operator on the `t` variable: partial summation sends
    /// `s u^a l^v` to `s v/(v+j) u^a l^(v+j)`.
    pub fn log_weighted(&self, j: u32) -> MainTerm {
        let mut out = MainTerm::zero(self.degree + j, self.a2_normalized);
        for (u, v, c) in self.terms() {
            if v + j == 0 {
                continue;
            }
            out.add_term(u, v + j, c * Rational::new(v.into(), (v + j).into()));
        }
        out
    }

    /// `sum s_uv u! v! / (u+v+1)!`.
    pub fn functional_a(&self) -> Rational {
        self.terms().fold(Rational::zero(), |acc, (u, v, c)| acc + c * beta_weight(u as u64, v as u64))
    }

    /// Numeric value at `(l, u)`, including `a_2` when the term is
    /// normalized by it.
    pub fn evaluate(&self, l: f64, u: f64) -> f64 {
        let raw: f64 = self.terms().map(|(ue, ve, c)| to_f64(c) * u.powi(ue as i32) * l.powi(ve as i32)).sum();
        if self.a2_normalized {
            raw * A2
        } else {
            raw
        }
    }

    /// Largest `|s_uv|`.
    pub fn max_abs_coeff(&self) -> Rational {
        self.coeffs.values().map(|c| c.abs()).max().unwrap_or_else(Rational::zero)
    }
}

/// `u! v! / (u+v+1)! = integral_0^1 x^u (1-x)^v dx`.
pub fn beta_weight(u: u64, v: u64) -> Rational {
    Rational::new(factorial(u) * factorial(v), factorial(u + v + 1))
}

impl fmt::Display for MainTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.a2_normalized {
            write!(f, "a2*(")?;
        }
        if self.is_zero() {
            write!(f, "0")?;
        }
        // Highest power of l first, matching the usual table layout.
        for (i, (u, v, c)) in self.terms().collect::<Vec<_>>().into_iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            if v > 0 {
                write!(f, " l^{v}")?;
            }
            if u > 0 {
                write!(f, " u^{u}")?;
            }
        }
        if self.a2_normalized {
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl Default for MainTerm {
    fn default() -> Self {
        Self::zero(0, true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    #[test]
    fn log_weight_identity_and_shift() {
        let m = MainTerm::monomial(0, 5, rat(1, 60), true);
        assert_eq!(m.log_weighted(0), m);
        let w = m.log_weighted(1);
        assert_eq!(w.degree(), 6);
        assert_eq!(w.leading(), rat(1, 72));
        let m6 = MainTerm::monomial(0, 6, rat(1, 144), true);
        assert_eq!(m6.log_weighted(2).leading(), rat(1, 192));
    }

    #[test]
    fn log_weight_keeps_u_power() {
        let mut m = MainTerm::zero(5, true);
        m.add_term(0, 5, rat(1, 30));
        m.add_term(1, 4, rat(1, 24));
        let w = m.log_weighted(1);
        assert_eq!(w.coeff(0, 6), rat(1, 36));
        assert_eq!(w.coeff(1, 5), rat(1, 30));
    }

    #[test]
    fn cancelling_terms_are_removed() {
        let mut m = MainTerm::monomial(1, 3, rat(1, 2), true);
        m.add_term(1, 3, rat(-1, 2));
        assert!(m.is_zero());
    }

    #[test]
    #[should_panic(expected = "degree-4")]
    fn inhomogeneous_term_panics() {
        let mut m = MainTerm::zero(4, true);
        m.add_term(1, 4, rat(1, 1));
    }

    #[test]
    fn functional_a_weights() {
        assert_eq!(beta_weight(0, 4), rat(1, 5));
        assert_eq!(beta_weight(1, 7), rat(1, 72));
        let m = MainTerm::monomial(0, 4, rat(1, 12), true);
        assert_eq!(m.functional_a(), rat(1, 60));
    }

    #[test]
    fn display_lists_terms() {
        let mut m = MainTerm::zero(5, true);
        m.add_term(0, 5, rat(1, 30));
        m.add_term(1, 4, rat(1, 24));
        assert_eq!(m.to_string(), "a2*(1/30 l^5 + 1/24 l^4 u^1)");
    }
}

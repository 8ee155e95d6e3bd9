//! The twisted von Mangoldt sum `M(a,b;X,delta)` as an exact power series in
//! `lambda = delta log X`, and the smoothed `d(n)` mean-value coefficient.

use num_traits::{One, Signed, Zero};

use super::combinatorics::factorial;
use super::correlation::{main_term_t, main_term_tp};
use super::main_term::MainTerm;
use super::rational::{int, GaussianRational, Rational};
use super::seq::SeqDescriptor;

/// Truncated series `sum_{k<K} (i lambda)^k/k! sum_uv s_uv (u+k)! v!/(u+v+k+1)!`
/// with an exact bound on the discarded tail.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MSeries {
    pub value: GaussianRational,
    pub terms: u32,
    /// Bound on `|sum_{k>=K} ...|`; `None` when `|lambda| >= K + 1`, where the
    /// geometric majorant used for the bound diverges.
    pub tail_bound: Option<Rational>,
}

fn shifted_weight(u: u32, v: u32, k: u32) -> Rational {
    let (u, v, k) = (u as u64, v as u64, k as u64);
    Rational::new(factorial(u + k) * factorial(v), factorial(u + v + k + 1))
}

/// Coefficient of `L^(beta+1)` in `M(a,b;X,lambda/L)`, given the main term
/// of `T_{a,b;p}`.
///
/// The tail bound uses that the beta-integral weights decrease in `k` and
/// `sum_{k>=K} x^k/k! <= x^K/K! * (K+1)/(K+1-x)` for `0 <= x < K+1`.
pub fn m_series(m: &MainTerm, lambda: &Rational, k_terms: u32) -> MSeries {
    assert!(k_terms >= 1, "truncation order must be positive");
    let mut value = GaussianRational::default();
    let mut power = GaussianRational::real(Rational::one()); // (i lambda)^k / k!
    let i_lambda = GaussianRational::new(Rational::zero(), lambda.clone());
    for k in 0..k_terms {
        let inner = m.terms().fold(Rational::zero(), |acc, (u, v, s)| acc + s * shifted_weight(u, v, k));
        value += &power.scale(&inner);
        power = (&power * &i_lambda).scale(&Rational::new(1.into(), (k + 1).into()));
    }

    let x = lambda.abs();
    let kk = int(k_terms as i64);
    let tail_bound = if x < &kk + int(1) {
        let geometric = num_traits::pow(x.clone(), k_terms as usize)
            / Rational::from_integer(factorial(k_terms as u64))
            * ((&kk + int(1)) / (&kk + int(1) - &x));
        let weights = m.terms().fold(Rational::zero(), |acc, (u, v, s)| acc + s.abs() * shifted_weight(u, v, k_terms));
        Some(geometric * weights)
    } else {
        None
    };
    MSeries { value, terms: k_terms, tail_bound }
}

/// `1/120 - 4 sum_{1<=j<=J} (-1)^j lambda^(2j)/(5+2j)!`, the coefficient of
/// `(a_2/2pi) T L^5` in the shifted mean value of `D_d`.
pub fn theorem2_coefficient(lambda: &Rational, j_terms: u32) -> Rational {
    assert!(j_terms >= 1, "series length must be positive");
    let mut acc = Rational::new(1.into(), 120.into());
    let lambda2 = lambda * lambda;
    let mut power = Rational::one();
    for j in 1..=j_terms {
        power *= &lambda2;
        let term = &power / Rational::from_integer(factorial(5 + 2 * j as u64));
        if j % 2 == 1 {
            acc += term * int(4);
        } else {
            acc -= term * int(4);
        }
    }
    acc
}

/// Same coefficient through the series route: `T_{d,d}` leading coefficient
/// minus `2 Re M(d,d)` truncated at `k_terms`.
pub fn theorem2_coefficient_via_m(lambda: &Rational, k_terms: u32) -> Rational {
    let d = SeqDescriptor::d();
    let c = main_term_t(&d, &d).expect("(d,d) is always supported").leading();
    let tp = main_term_tp(&d, &d).expect("(d,d) is always supported");
    c - m_series(&tp, lambda, k_terms).value.re * int(2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    fn tp_dd() -> MainTerm {
        main_term_tp(&SeqDescriptor::d(), &SeqDescriptor::d()).unwrap()
    }

    #[test]
    fn lambda_zero_collapses_to_functional_a() {
        let m = tp_dd();
        let s = m_series(&m, &Rational::zero(), 6);
        assert_eq!(s.value, GaussianRational::real(m.functional_a()));
        assert_eq!(s.value.re, rat(1, 60));
        assert_eq!(s.tail_bound, Some(Rational::zero()));
    }

    #[test]
    fn lambda_one_partial_sums() {
        // (d,d): s_{0,4} = 1/12, so the k-th term is (i lambda)^k * 2/(5+k)!.
        let s = m_series(&tp_dd(), &rat(1, 1), 8);
        let f = |n: u64| Rational::from_integer(factorial(n));
        let expected_re = (int(1) / f(5) - int(1) / f(7) + int(1) / f(9) - int(1) / f(11)) * int(2);
        let expected_im = (int(1) / f(6) - int(1) / f(8) + int(1) / f(10) - int(1) / f(12)) * int(2);
        assert_eq!(s.value.re, expected_re);
        assert_eq!(s.value.im, expected_im);
    }

    #[test]
    fn tail_bound_dominates_next_terms() {
        let m = tp_dd();
        let lambda = rat(2, 1);
        let short = m_series(&m, &lambda, 6);
        let long = m_series(&m, &lambda, 30);
        let diff = long.value - short.value.clone();
        let bound = short.tail_bound.unwrap();
        assert!(diff.re.abs() <= bound && diff.im.abs() <= bound);
        assert!(m_series(&m, &rat(9, 1), 6).tail_bound.is_none());
    }

    #[test]
    fn theorem2_values() {
        assert_eq!(theorem2_coefficient(&Rational::zero(), 4), rat(1, 120));
        let expected = rat(1, 120) + rat(4, 5040) - rat(4, 362880) + rat(4, 39916800);
        assert_eq!(theorem2_coefficient(&rat(1, 1), 3), expected);
    }

    #[test]
    fn theorem2_routes_agree() {
        for lambda in [rat(0, 1), rat(1, 2), rat(1, 1), rat(2, 1), rat(-3, 2)] {
            assert_eq!(theorem2_coefficient(&lambda, 5), theorem2_coefficient_via_m(&lambda, 12));
            assert_eq!(theorem2_coefficient(&lambda, 7), theorem2_coefficient_via_m(&lambda, 16));
        }
    }

    #[test]
    fn theorem2_is_even_in_lambda() {
        assert_eq!(theorem2_coefficient(&rat(3, 4), 6), theorem2_coefficient(&rat(-3, 4), 6));
    }
}

//! Leading terms of the divisor correlation sums
//! `T_{a,b}(t) = sum_{n<=t} a(n) b(n)/n` and
//! `T_{a,b;p}(t) = sum_{n<=t} a(n) b(pn)/n`, and the constant `A(a,b)`.
//!
//! All results are `a_2`-normalized: the stored rationals multiply
//! `a_2 = 6/pi^2`.

use num_bigint::BigInt;
use num_traits::Zero;

use super::combinatorics::{binom, factorial};
use super::main_term::MainTerm;
use super::rational::{int, Rational};
use super::seq::SeqDescriptor;
use super::ExactError;

/// Largest divisor-derivative order accepted after expansion.
pub const DEFAULT_ORDER_CAP: u32 = 8;

/// Leading coefficient (without `a_2`) of
/// `T_{(n1,n2),(n3,n4)}(t) = sum_{n<=t} d^(n1,n2)(n) d^(n3,n4)(n)/n`, a
/// polynomial in `log t` of degree `n1+n2+n3+n4+4`:
///
/// `n1!n2!n3!n4!/(N+4)! * sum_{a<=n1} sum_{c<=n2} binom(n3+1+a+c, n3) binom(n4+1+n1+n2-a-c, n4)`.
pub fn leading_coeff_t4(n1: u32, n2: u32, n3: u32, n4: u32) -> Rational {
    let total = (n1 + n2 + n3 + n4) as u64;
    let mut sum = BigInt::zero();
    for a in 0..=n1 {
        for c in 0..=n2 {
            sum += binom((n3 + 1 + a + c) as u64, n3 as i64) * binom((n4 + 1 + n1 + n2 - a - c) as u64, n4 as i64);
        }
    }
    let prefactor = factorial(n1 as u64) * factorial(n2 as u64) * factorial(n3 as u64) * factorial(n4 as u64);
    Rational::new(prefactor * sum, factorial(total + 4))
}

/// `C(mu,nu) = mu! nu!/(mu+nu+4)! * (binom(mu+nu+2, mu+1) - 1)`, the leading
/// coefficient of `T_{mu,nu}(t)`.
pub fn coeff_c(mu: u32, nu: u32) -> Rational {
    let (mu, nu) = (mu as u64, nu as u64);
    Rational::new(factorial(mu) * factorial(nu) * (binom(mu + nu + 2, (mu + 1) as i64) - 1), factorial(mu + nu + 4))
}

/// Main term of `T_{mu,nu;p}(t)`:
/// `2C(mu,nu) l^(mu+nu+4) + sum_{k<nu} binom(nu,k) u^(nu-k) l^(mu+k+4) C(mu,k)`.
pub fn shifted_pair_term(mu: u32, nu: u32) -> MainTerm {
    let mut m = MainTerm::zero(mu + nu + 4, true);
    m.add_term(0, mu + nu + 4, coeff_c(mu, nu) * int(2));
    for k in 0..nu {
        m.add_term(nu - k, mu + k + 4, coeff_c(mu, k) * Rational::from_integer(binom(nu as u64, k as i64)));
    }
    m
}

fn check_orders(s: &SeqDescriptor, cap: u32) -> Result<(), ExactError> {
    match s.expand().iter().map(|t| t.order).max() {
        Some(order) if order > cap => Err(ExactError::OrderTooLarge { order, cap }),
        _ => Ok(()),
    }
}

/// Leading main term of `T_{a,b}(t)`, a pure power of `l = log t`.
///
/// Two bare divisor derivatives go through the four-index formula
/// [`leading_coeff_t4`]. Anything involving `alpha` or a log weight is
/// expanded into `log^i d^(k)` pieces, each handled by `C(k,k')` and the
/// log-power operator.
pub fn main_term_t(a: &SeqDescriptor, b: &SeqDescriptor) -> Result<MainTerm, ExactError> {
    check_orders(a, DEFAULT_ORDER_CAP)?;
    check_orders(b, DEFAULT_ORDER_CAP)?;
    if let (SeqDescriptor::DivisorDeriv(n1, n2), SeqDescriptor::DivisorDeriv(n3, n4)) = (a, b) {
        let degree = n1 + n2 + n3 + n4 + 4;
        return Ok(MainTerm::monomial(0, degree, leading_coeff_t4(*n1, *n2, *n3, *n4), true));
    }
    let mut out = MainTerm::zero(a.weight() + b.weight() + 4, true);
    for ta in a.expand() {
        for tb in b.expand() {
            let base = MainTerm::monomial(0, ta.order + tb.order + 4, coeff_c(ta.order, tb.order), true);
            let weighted = base.log_weighted(ta.log_power + tb.log_power);
            out.add_scaled(&weighted, &Rational::from_integer(&ta.coeff * &tb.coeff));
        }
    }
    Ok(out)
}

/// Main term of `T_{a,b;p}(t)` as a polynomial in `l = log t`, `u = log p`.
///
/// With `a = sum c_i log^i d^(k_i)` and `b = sum c_j log^j d^(m_j)`,
/// `b(pn) = sum c_j (u + log n)^j d^(m_j)(pn)`, so
/// `T_{a,b;p} = sum c_i c_j binom(j,r) u^(j-r) L^(i+r) T_{k_i,m_j;p}` where
/// `L` is the log-power operator on `t`.
pub fn main_term_tp(a: &SeqDescriptor, b: &SeqDescriptor) -> Result<MainTerm, ExactError> {
    check_orders(a, DEFAULT_ORDER_CAP)?;
    check_orders(b, DEFAULT_ORDER_CAP)?;
    let mut out = MainTerm::zero(a.weight() + b.weight() + 4, true);
    for ta in a.expand() {
        for tb in b.expand() {
            let base = shifted_pair_term(ta.order, tb.order);
            let c = &ta.coeff * &tb.coeff;
            for r in 0..=tb.log_power {
                let piece = base.log_weighted(ta.log_power + r).times_log_p(tb.log_power - r);
                let k = Rational::from_integer(&c * binom(tb.log_power as u64, r as i64));
                out.add_scaled(&piece, &k);
            }
        }
    }
    Ok(out)
}

/// `A(m) = sum s_uv u! v!/(u+v+1)!`, preserving the `a_2` normalization of
/// `m`.
pub fn functional_a(m: &MainTerm) -> Rational {
    m.functional_a()
}

/// Closed form of `A(d^(mu), d^(nu))`:
/// `2/((mu+5)(mu+4)(mu+3)(mu+2))` when `nu = 0`, otherwise
/// `mu! nu!/(mu+nu+5)! * (2 binom(mu+nu+2, nu+1) + binom(mu+nu+2, nu) - nu - 3)`.
pub fn closed_form_a(mu: u32, nu: u32) -> Rational {
    let (m, n) = (mu as u64, nu as u64);
    if nu == 0 {
        let den = (m + 5) * (m + 4) * (m + 3) * (m + 2);
        return Rational::new(BigInt::from(2), BigInt::from(den));
    }
    let bracket = binom(m + n + 2, (n + 1) as i64) * 2 + binom(m + n + 2, n as i64) - BigInt::from(n + 3);
    Rational::new(factorial(m) * factorial(n) * bracket, factorial(m + n + 5))
}

/// Coefficient of `(a_2/2pi) T L^(beta+1)` in the mean value `I(a,b;T)`:
/// `c_{a,b} - A(a,b) - A(b,a)`.
pub fn mean_value_coeff(a: &SeqDescriptor, b: &SeqDescriptor) -> Result<Rational, ExactError> {
    let c = main_term_t(a, b)?.leading();
    let a_ab = main_term_tp(a, b)?.functional_a();
    let a_ba = main_term_tp(b, a)?.functional_a();
    Ok(c - a_ab - a_ba)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    fn d(k: u32) -> SeqDescriptor {
        SeqDescriptor::d_deriv(k)
    }

    /// Unsimplified four-fold sum over `(a, c, e, g)` with
    /// `a+b=n1, c+d=n2, e+f=n3, g+h=n4`, divided by `(N+4)!`.
    fn four_fold_oracle(n1: u32, n2: u32, n3: u32, n4: u32) -> Rational {
        let f = |k: u32| factorial(k as u64);
        let mut sum = BigInt::zero();
        for a in 0..=n1 {
            for c in 0..=n2 {
                for e in 0..=n3 {
                    for g in 0..=n4 {
                        let (b, dd, ff, h) = (n1 - a, n2 - c, n3 - e, n4 - g);
                        sum += binom(n1 as u64, a as i64)
                            * binom(n2 as u64, c as i64)
                            * binom(n3 as u64, e as i64)
                            * binom(n4 as u64, g as i64)
                            * f(a + e)
                            * f(c + ff)
                            * f(b + g)
                            * f(dd + h);
                    }
                }
            }
        }
        Rational::new(sum, factorial((n1 + n2 + n3 + n4 + 4) as u64))
    }

    #[test]
    fn t4_matches_four_fold_sum() {
        for n1 in 0..=3 {
            for n2 in 0..=3 {
                for n3 in 0..=3 {
                    for n4 in 0..=3 {
                        assert_eq!(
                            leading_coeff_t4(n1, n2, n3, n4),
                            four_fold_oracle(n1, n2, n3, n4),
                            "({n1},{n2},{n3},{n4})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn t4_table_values() {
        assert_eq!(leading_coeff_t4(0, 0, 0, 0), rat(1, 24));
        assert_eq!(leading_coeff_t4(1, 0, 1, 0), rat(1, 144));
        // alpha = d^(1,1): (alpha, alpha) and (d, alpha)
        assert_eq!(leading_coeff_t4(1, 1, 1, 1), rat(17, 20160));
        assert_eq!(leading_coeff_t4(0, 0, 1, 1), rat(1, 180));
    }

    #[test]
    fn coeff_c_values() {
        assert_eq!(coeff_c(0, 0), rat(1, 24));
        assert_eq!(coeff_c(2, 2), rat(19, 10080));
        assert_eq!(coeff_c(1, 2), rat(1, 280));
        assert_eq!(coeff_c(0, 1), rat(1, 60));
    }

    #[test]
    fn coeff_c_is_t4_special_case() {
        for mu in 0..=4 {
            for nu in 0..=4 {
                assert_eq!(coeff_c(mu, nu), leading_coeff_t4(mu, 0, nu, 0));
            }
        }
    }

    #[test]
    fn unshifted_alpha_routes_agree() {
        // Alpha goes through the log-weight calculus, d^(1,1) through the
        // four-index formula.
        let pairs = [
            (SeqDescriptor::d(), SeqDescriptor::Alpha, SeqDescriptor::DivisorDeriv(1, 1)),
            (d(1), SeqDescriptor::Alpha, SeqDescriptor::DivisorDeriv(1, 1)),
            (d(2), SeqDescriptor::Alpha, SeqDescriptor::DivisorDeriv(1, 1)),
        ];
        for (x, alpha, d11) in pairs {
            assert_eq!(main_term_t(&x, &alpha).unwrap(), main_term_t(&x, &d11).unwrap());
        }
        assert_eq!(
            main_term_t(&SeqDescriptor::Alpha, &SeqDescriptor::Alpha).unwrap(),
            main_term_t(&SeqDescriptor::DivisorDeriv(1, 1), &SeqDescriptor::DivisorDeriv(1, 1)).unwrap()
        );
        // d^(2,1) both ways
        let via_t4 = main_term_t(&SeqDescriptor::DivisorDeriv(2, 1), &d(1)).unwrap();
        let via_log = main_term_t(&SeqDescriptor::log_weighted(0, SeqDescriptor::DivisorDeriv(2, 1)), &d(1)).unwrap();
        assert_eq!(via_t4, via_log);
    }

    #[test]
    fn unshifted_examples() {
        let t = |a: SeqDescriptor, b: SeqDescriptor| main_term_t(&a, &b).unwrap();
        let m = t(SeqDescriptor::d(), SeqDescriptor::Alpha);
        assert_eq!((m.degree(), m.leading()), (6, rat(1, 180)));
        let m = t(SeqDescriptor::Alpha, SeqDescriptor::Alpha);
        assert_eq!((m.degree(), m.leading()), (8, rat(17, 20160)));
        let m = t(SeqDescriptor::d(), d(1));
        assert_eq!((m.degree(), m.leading()), (5, rat(1, 60)));
        assert!(m.terms().all(|(u, _, _)| u == 0));
    }

    #[test]
    fn shifted_examples() {
        let tp = |a: SeqDescriptor, b: SeqDescriptor| main_term_tp(&a, &b).unwrap();
        let m = tp(SeqDescriptor::d(), SeqDescriptor::d());
        assert_eq!(m, MainTerm::monomial(0, 4, rat(1, 12), true));
        let m = tp(d(1), SeqDescriptor::Alpha);
        assert_eq!(m.coeff(0, 7), rat(1, 210));
        assert_eq!(m.coeff(1, 6), rat(1, 72));
        assert_eq!(m.terms().count(), 2);
        let m = tp(SeqDescriptor::Alpha, SeqDescriptor::Alpha);
        assert_eq!(m.coeff(0, 8), rat(17, 10080));
        assert_eq!(m.coeff(1, 7), rat(1, 210));
        assert_eq!(m.terms().count(), 2);
    }

    #[test]
    fn functional_a_examples() {
        let a = |x: SeqDescriptor, y: SeqDescriptor| main_term_tp(&x, &y).unwrap().functional_a();
        assert_eq!(a(SeqDescriptor::d(), SeqDescriptor::d()), rat(1, 60));
        assert_eq!(a(SeqDescriptor::Alpha, SeqDescriptor::Alpha), rat(23, 90720));
        assert_eq!(a(SeqDescriptor::d(), d(1)), rat(1, 144));
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(closed_form_a(2, 0), rat(1, 420));
        assert_eq!(closed_form_a(2, 1), rat(1, 960));
        assert_eq!(closed_form_a(2, 2), rat(5, 9072));
    }

    #[test]
    fn closed_form_matches_functional() {
        for mu in 0..=4 {
            for nu in 0..=4 {
                let via_tp = main_term_tp(&d(mu), &d(nu)).unwrap().functional_a();
                assert_eq!(closed_form_a(mu, nu), via_tp, "({mu},{nu})");
            }
        }
    }

    #[test]
    fn order_cap_is_enforced() {
        let big = SeqDescriptor::d_deriv(9);
        assert!(matches!(main_term_t(&big, &SeqDescriptor::d()), Err(ExactError::OrderTooLarge { order: 9, cap: 8 })));
        assert!(main_term_tp(&SeqDescriptor::d(), &big).is_err());
    }

    #[test]
    fn mean_value_coefficients() {
        let alpha = SeqDescriptor::Alpha;
        assert_eq!(mean_value_coeff(&SeqDescriptor::d(), &SeqDescriptor::d()).unwrap(), rat(1, 120));
        assert_eq!(mean_value_coeff(&d(1), &d(1)).unwrap(), rat(11, 5040));
        assert_eq!(mean_value_coeff(&SeqDescriptor::d(), &d(1)).unwrap(), rat(1, 240));
        assert_eq!(mean_value_coeff(&SeqDescriptor::d(), &alpha).unwrap(), rat(1, 630));
        assert_eq!(mean_value_coeff(&d(1), &alpha).unwrap(), rat(17, 20160));
        assert_eq!(mean_value_coeff(&alpha, &alpha).unwrap(), rat(61, 181440));
    }
}

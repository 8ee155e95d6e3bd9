//! Assembled constants: the two fourth-moment mean values, the resulting
//! bounds on `J_2(T)`, and the random-matrix leading constants.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::combinatorics::factorial;
use super::correlation::mean_value_coeff;
use super::rational::{int, rat, Decimal, Rational};
use super::seq::SeqDescriptor;
use super::ExactError;
use crate::numeric::NeumaierSum;

/// Digits carried by the fixed-point rendering of the fourth-moment bound constants c1, c2.
const RENDER_SCALE: u32 = 60;

/// One mean value `I_N(a,b;T) ~ coeff * (a_2/2pi) T L^9` entering `S_beta`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairCoefficient {
    pub a: SeqDescriptor,
    pub b: SeqDescriptor,
    /// Power `N` of `log(gamma/2pi)` weighting the zero sum.
    pub log_power: u32,
    pub coeff: Rational,
}

/// Coefficients of `(a_2/2pi) T L^9` in `S_alpha` and `S_beta`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Corollary1 {
    pub s_alpha: Rational,
    pub s_beta: Rational,
    /// The same constants as coefficients of `T L^9 / pi^3`
    /// (`a_2/2pi = 3/pi^3`).
    pub s_alpha_pi3: Rational,
    pub s_beta_pi3: Rational,
    /// The six mean values of the collapsed `S_beta` decomposition.
    pub pairs: Vec<PairCoefficient>,
}

fn seq_d() -> SeqDescriptor {
    SeqDescriptor::d()
}

fn seq_d1() -> SeqDescriptor {
    SeqDescriptor::d_deriv(1)
}

/// `beta_t = l^2 d - 2 l d^(1) + alpha` as `(sequence, coefficient, power of l)`.
fn beta_components() -> [(SeqDescriptor, i64, u32); 3] {
    [(seq_d(), 1, 2), (seq_d1(), -2, 1), (SeqDescriptor::Alpha, 1, 0)]
}

/// `S_beta` coefficient from all nine ordered products of the expansion of
/// `beta_t(m) beta_t(n)`.
pub fn s_beta_nine_term() -> Result<Rational, ExactError> {
    let mut acc = Rational::zero();
    for (x, cx, _) in beta_components() {
        for (y, cy, _) in beta_components() {
            acc += mean_value_coeff(&x, &y)? * int(cx * cy);
        }
    }
    Ok(acc)
}

/// `S_beta` through the collapsed form
/// `I_4(d,d) + 4 I_2(d1,d1) + I(alpha,alpha) - 4 Re I_3(d,d1) + 2 Re I_2(d,alpha) - 4 Re I_1(d1,alpha)`.
fn s_beta_collapsed() -> Result<(Rational, Vec<PairCoefficient>), ExactError> {
    let alpha = SeqDescriptor::Alpha;
    let layout = [
        (seq_d(), seq_d(), 4, 1),
        (seq_d1(), seq_d1(), 2, 4),
        (alpha.clone(), alpha.clone(), 0, 1),
        (seq_d(), seq_d1(), 3, -4),
        (seq_d(), alpha.clone(), 2, 2),
        (seq_d1(), alpha.clone(), 1, -4),
    ];
    let mut acc = Rational::zero();
    let mut pairs = Vec::new();
    for (a, b, log_power, weight) in layout {
        let coeff = mean_value_coeff(&a, &b)?;
        acc += &coeff * int(weight);
        pairs.push(PairCoefficient { a, b, log_power, coeff });
    }
    Ok((acc, pairs))
}

pub fn corollary1_coefficients() -> Result<Corollary1, ExactError> {
    let alpha = SeqDescriptor::Alpha;
    let s_alpha = mean_value_coeff(&alpha, &alpha)?;
    let d11 = SeqDescriptor::DivisorDeriv(1, 1);
    let s_alpha_t4 = mean_value_coeff(&d11, &d11)?;
    if s_alpha != s_alpha_t4 {
        return Err(ExactError::Inconsistent(format!("S_alpha: alpha route {s_alpha} != d^(1,1) route {s_alpha_t4}")));
    }
    let (s_beta, pairs) = s_beta_collapsed()?;
    let nine = s_beta_nine_term()?;
    if s_beta != nine {
        return Err(ExactError::Inconsistent(format!("S_beta: collapsed route {s_beta} != nine-term route {nine}")));
    }
    Ok(Corollary1 { s_alpha_pi3: &s_alpha * int(3), s_beta_pi3: &s_beta * int(3), s_alpha, s_beta, pairs })
}

/// `c_1 = (sqrt a - sqrt b)^2`, `c_2 = (sqrt a + sqrt b)^2` with `a`, `b`
/// the `T L^9/pi^3` coefficients of `S_alpha`, `S_beta`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theorem1Bounds {
    pub a: Rational,
    pub b: Rational,
    pub c1: Decimal,
    pub c2: Decimal,
}

impl Theorem1Bounds {
    /// `c1 c2 = (a - b)^2`, checked on the fixed-point values to within the
    /// truncation error of the rendering.
    pub fn product_identity_holds(&self) -> bool {
        let product = self.c1.mul(&self.c2);
        let diff = &self.a - &self.b;
        let exact = Decimal::from_rational(&(&diff * &diff), RENDER_SCALE);
        let err = (product.mantissa - exact.mantissa).magnitude().clone();
        err <= BigInt::from(10).pow(6).magnitude().clone()
    }
}

pub fn theorem1_bounds() -> Result<Theorem1Bounds, ExactError> {
    let c = corollary1_coefficients()?;
    Ok(theorem1_bounds_from(c.s_alpha_pi3, c.s_beta_pi3))
}

pub fn theorem1_bounds_from(a: Rational, b: Rational) -> Theorem1Bounds {
    // (sqrt a -+ sqrt b)^2 = a + b -+ 2 sqrt(ab); one square root keeps the
    // truncation error at a single ulp of the fixed-point scale.
    let sum = Decimal::from_rational(&(&a + &b), RENDER_SCALE);
    let cross = Decimal::sqrt_rational(&(&a * &b), RENDER_SCALE).mul_int(2);
    Theorem1Bounds { c1: sum.sub(&cross), c2: sum.add(&cross), a, b }
}

/// Barnes `G(n)` at a positive integer: `G(1) = G(2) = 1`,
/// `G(n+1) = prod_{j<n} j!`.
pub fn barnes_g(n: u32) -> BigInt {
    assert!(n >= 1, "Barnes G is evaluated at positive integers only");
    (1..n.saturating_sub(1)).fold(BigInt::one(), |acc, j| acc * factorial(j as u64))
}

/// Random-matrix prediction for `J_k(T) / (T L^(k(k+2)+1))`.
#[derive(Clone, Debug, PartialEq)]
pub struct RmtConstant {
    pub k: u32,
    /// `G(k+2)^2 / G(2k+3)`.
    pub barnes_ratio: Rational,
    /// Arithmetic factor `a_k`, Euler product over primes below `prime_bound`.
    pub a_k: f64,
    /// Estimated relative error of the truncated Euler product.
    pub a_k_tail: f64,
    pub prime_bound: u64,
    /// `barnes_ratio * a_k / 2pi` (the `N(T) ~ T L/2pi` factor folded in).
    pub leading: f64,
    pub warning: Option<String>,
}

/// Relative tail accuracy needed to quote six significant digits.
const SIX_DIGITS: f64 = 5e-7;

pub fn rmt_leading_constant(k: u32, prime_bound: u64) -> Result<RmtConstant, ExactError> {
    if !(1..=3).contains(&k) {
        return Err(ExactError::InvalidArgument(format!("k = {k}; only k in 1..=3 is supported")));
    }
    let barnes_ratio = Rational::new(barnes_g(k + 2).pow(2), barnes_g(2 * k + 3));
    let primes = crate::divisor::primes_below(prime_bound);
    let mut log_product = NeumaierSum::default();
    for &p in &primes {
        log_product += euler_factor_log(k, 1.0 / p as f64);
    }
    let a_k = log_product.sum().exp();

    // Each factor is 1 + c2 x^2 + O(x^3); the tail over p >= P is at most
    // about |c2| sum_{n>=P} n^-2 < |c2|/(P-1), doubled for the higher terms.
    let c2 = euler_factor_c2(k);
    let a_k_tail = if c2 == 0.0 { 0.0 } else { 2.0 * c2.abs() / (prime_bound.max(2) - 1) as f64 };
    let warning = (a_k_tail > SIX_DIGITS).then(|| {
        format!("prime bound {prime_bound} leaves a relative tail of {a_k_tail:.1e}; six digits not certified")
    });
    let leading = crate::exact::rational::to_f64(&barnes_ratio) * a_k / (2.0 * std::f64::consts::PI);
    Ok(RmtConstant { k, barnes_ratio, a_k, a_k_tail, prime_bound, leading, warning })
}

/// `log[(1-x)^(k^2) sum_m binom(m+k-1, m)^2 x^m]`.
fn euler_factor_log(k: u32, x: f64) -> f64 {
    let mut sum = NeumaierSum::default();
    let mut coeff = 1.0f64; // binom(m+k-1, m)
    let mut xm = 1.0f64;
    let mut m = 0u32;
    loop {
        let term = coeff * coeff * xm;
        sum += term;
        if term < 1e-20 * sum.sum() {
            break;
        }
        m += 1;
        coeff *= (m + k - 1) as f64 / m as f64;
        xm *= x;
    }
    (k * k) as f64 * (-x).ln_1p() + sum.sum().ln()
}

/// Coefficient of `x^2` in the Euler factor (the `x^1` coefficient vanishes).
fn euler_factor_c2(k: u32) -> f64 {
    let k2 = (k * k) as i64;
    let b = |m: i64| -> i64 {
        // binom(m+k-1, m)
        let mut c = 1i64;
        for i in 1..=m {
            c = c * (i + k as i64 - 1) / i;
        }
        c
    };
    // (1 - x)^(k^2) = 1 - k^2 x + binom(k^2, 2) x^2 - ...
    let series = [1, b(1) * b(1), b(2) * b(2)];
    let power = [1, -k2, k2 * (k2 - 1) / 2];
    (power[0] * series[2] + power[1] * series[1] + power[2] * series[0]) as f64
}

/// `1/2880`, the `k = 2` random-matrix constant in units of `T L^9/pi^3`.
pub fn rmt_k2_pi3() -> Rational {
    Rational::new(barnes_g(4).pow(2), barnes_g(7)) * rat(6, 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corollary_constants() {
        let c = corollary1_coefficients().unwrap();
        assert_eq!(c.s_alpha, rat(61, 181440));
        assert_eq!(c.s_beta, rat(97, 181440));
        assert_eq!(c.s_alpha_pi3, rat(61, 60480));
        assert_eq!(c.s_beta_pi3, rat(97, 60480));
        let dd = &c.pairs[0];
        assert_eq!((dd.log_power, dd.coeff.clone()), (4, rat(1, 120)));
    }

    #[test]
    fn nine_term_numerators() {
        // 1512 + 1584 + 61 - 3024 + 576 - 612 = 97 over 181440
        let parts = [1512, 1584, 61, -3024, 576, -612];
        let total: i64 = parts.iter().sum();
        assert_eq!(rat(total, 181440), s_beta_nine_term().unwrap());
    }

    #[test]
    fn theorem1_digits() {
        let t = theorem1_bounds().unwrap();
        assert!(t.c1.to_plain_string().starts_with("0.0000687"), "{}", t.c1);
        assert!(t.c2.to_plain_string().starts_with("0.0051561"), "{}", t.c2);
        assert_eq!(t.c1.to_significant(30).chars().filter(|c| c.is_ascii_digit()).count(), 30 + 5);
        assert!(t.product_identity_holds());
        // (a - b)^2 = (36/60480)^2 exactly
        assert_eq!(&t.b - &t.a, rat(36, 60480));
    }

    #[test]
    fn theorem1_against_f64() {
        let t = theorem1_bounds().unwrap();
        let (a, b) = (61.0f64 / 60480.0, 97.0f64 / 60480.0);
        assert!((t.c1.to_f64() - (a.sqrt() - b.sqrt()).powi(2)).abs() < 1e-15);
        assert!((t.c2.to_f64() - (a.sqrt() + b.sqrt()).powi(2)).abs() < 1e-15);
    }

    #[test]
    fn barnes_values() {
        assert_eq!(barnes_g(1), BigInt::from(1));
        assert_eq!(barnes_g(3), BigInt::from(1));
        assert_eq!(barnes_g(4), BigInt::from(2));
        assert_eq!(barnes_g(5), BigInt::from(12));
        assert_eq!(barnes_g(7), BigInt::from(34560));
    }

    #[test]
    fn rmt_k1_and_k2() {
        let k1 = rmt_leading_constant(1, 1000).unwrap();
        assert_eq!(k1.barnes_ratio, rat(1, 12));
        assert!((k1.a_k - 1.0).abs() < 1e-12);
        assert!(k1.warning.is_none());
        assert!((k1.leading - 1.0 / (24.0 * std::f64::consts::PI)).abs() < 1e-14);

        let k2 = rmt_leading_constant(2, 5_000_000).unwrap();
        assert_eq!(k2.barnes_ratio, rat(1, 8640));
        let a2 = 6.0 / std::f64::consts::PI.powi(2);
        assert!(((k2.a_k - a2) / a2).abs() < 1e-6, "a_2 = {}", k2.a_k);
        let target = 1.0 / (2880.0 * std::f64::consts::PI.powi(3));
        assert!(((k2.leading - target) / target).abs() < 1e-6);
        assert!(k2.warning.is_none());
        assert_eq!(rmt_k2_pi3(), rat(1, 2880));
    }

    #[test]
    fn rmt_small_prime_bound_warns() {
        let k2 = rmt_leading_constant(2, 100).unwrap();
        assert!(k2.warning.is_some());
        assert!(rmt_leading_constant(4, 100).is_err());
        assert!(rmt_leading_constant(0, 100).is_err());
    }

    #[test]
    fn euler_factor_second_coefficient() {
        assert_eq!(euler_factor_c2(1), 0.0);
        assert_eq!(euler_factor_c2(2), -1.0);
        // direct check against the numeric factor at small x
        for k in 1..=3 {
            let x = 1e-4;
            let f = euler_factor_log(k, x).exp() - 1.0;
            assert!((f - euler_factor_c2(k) * x * x).abs() < 1e-9, "k={k}");
        }
    }
}

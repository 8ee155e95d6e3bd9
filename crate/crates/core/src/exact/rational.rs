//! Exact scalar types: big rationals, Gaussian rationals, and fixed-point
//! decimals used only for rendering.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

pub fn int(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

pub fn to_f64(r: &Rational) -> f64 {
    // Scale down before converting so huge numerators and denominators do
    // not overflow to inf/inf.
    let shift = r.numer().bits().max(r.denom().bits()).saturating_sub(900);
    let n = (r.numer() >> shift).to_f64().unwrap_or(f64::NAN);
    let d = (r.denom() >> shift).to_f64().unwrap_or(f64::NAN);
    n / d
}

/// `(numerator, denominator)` as decimal strings, the serialized form of a
/// rational in reports.
pub fn to_parts(r: &Rational) -> (String, String) {
    (r.numer().to_string(), r.denom().to_string())
}

/// Complex number with exact rational components.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn real(re: Rational) -> Self {
        Self { re, im: Rational::zero() }
    }

    pub fn i() -> Self {
        Self { re: Rational::zero(), im: Rational::one() }
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self { re: &self.re * k, im: &self.im * k }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::real(Rational::one());
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl Add for GaussianRational {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self { re: self.re + rhs.re, im: self.im + rhs.im }
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl Sub for GaussianRational {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self { re: self.re - rhs.re, im: self.im - rhs.im }
    }
}

impl Neg for GaussianRational {
    type Output = Self;
    fn neg(self) -> Self {
        Self { re: -self.re, im: -self.im }
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re * &rhs.re - &self.im * &rhs.im, im: &self.re * &rhs.im + &self.im * &rhs.re }
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_negative() {
            write!(f, "{} - {}i", self.re, -self.im.clone())
        } else {
            write!(f, "{} + {}i", self.re, self.im)
        }
    }
}

/// Fixed-point decimal `mantissa * 10^-scale`.
///
/// Produced from exact rationals by truncation; used to render constants
/// (including square roots) to many more digits than `f64` carries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decimal {
    pub mantissa: BigInt,
    pub scale: u32,
}

fn pow10(e: u32) -> BigInt {
    num_traits::pow(BigInt::from(10), e as usize)
}

impl Decimal {
    /// `r` truncated toward zero to `scale` fractional digits.
    pub fn from_rational(r: &Rational, scale: u32) -> Self {
        let m = (r.numer() * pow10(scale)) / r.denom();
        Self { mantissa: m, scale }
    }

    /// `floor(sqrt(r) * 10^scale)`, via integer square root of the scaled
    /// rational. Requires `r >= 0`.
    pub fn sqrt_rational(r: &Rational, scale: u32) -> Self {
        assert!(!r.is_negative(), "square root of a negative rational");
        let scaled = (r.numer() * pow10(2 * scale)) / r.denom();
        Self { mantissa: scaled.sqrt(), scale }
    }

    fn align(&self, other: &Self) -> (BigInt, BigInt, u32) {
        let scale = self.scale.max(other.scale);
        (&self.mantissa * pow10(scale - self.scale), &other.mantissa * pow10(scale - other.scale), scale)
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b, scale) = self.align(other);
        Self { mantissa: a + b, scale }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let (a, b, scale) = self.align(other);
        Self { mantissa: a - b, scale }
    }

    pub fn mul_int(&self, k: i64) -> Self {
        Self { mantissa: &self.mantissa * k, scale: self.scale }
    }

    /// Product, truncated back to the larger of the two scales.
    pub fn mul(&self, other: &Self) -> Self {
        let scale = self.scale.max(other.scale);
        let raw = &self.mantissa * &other.mantissa;
        let drop = self.scale + other.scale - scale;
        Self { mantissa: raw / pow10(drop), scale }
    }

    pub fn to_f64(&self) -> f64 {
        to_f64(&Rational::new(self.mantissa.clone(), pow10(self.scale)))
    }

    /// Plain positional rendering with all `scale` fractional digits.
    pub fn to_plain_string(&self) -> String {
        let neg = self.mantissa.sign() == Sign::Minus;
        let digits = self.mantissa.abs().to_string();
        let scale = self.scale as usize;
        let padded =
            if digits.len() <= scale { format!("{}{}", "0".repeat(scale + 1 - digits.len()), digits) } else { digits };
        let (int_part, frac_part) = padded.split_at(padded.len() - scale);
        let sign = if neg { "-" } else { "" };
        if scale == 0 {
            format!("{sign}{int_part}")
        } else {
            format!("{sign}{int_part}.{frac_part}")
        }
    }

    /// Rendering truncated to `digits` significant digits (no rounding, so a
    /// printed prefix such as `0.0000687` can be compared verbatim).
    pub fn to_significant(&self, digits: usize) -> String {
        let plain = self.to_plain_string();
        let mut out = String::new();
        let mut seen = 0usize;
        let mut started = false;
        for ch in plain.chars() {
            if seen == digits {
                break;
            }
            if ch.is_ascii_digit() {
                if ch != '0' {
                    started = true;
                }
                if started {
                    seen += 1;
                }
            }
            out.push(ch);
        }
        out
    }
}

impl fmt::Display for Decimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_plain_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_are_reduced() {
        let r = rat(6, -8);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(4));
    }

    #[test]
    fn gaussian_i_squared() {
        let i = GaussianRational::i();
        assert_eq!(&i * &i, GaussianRational::real(rat(-1, 1)));
        assert_eq!(i.pow(4), GaussianRational::real(rat(1, 1)));
    }

    #[test]
    fn decimal_sqrt_two() {
        let d = Decimal::sqrt_rational(&rat(2, 1), 30);
        assert_eq!(d.to_plain_string(), "1.414213562373095048801688724209");
        assert_eq!(d.to_significant(5), "1.4142");
    }

    #[test]
    fn decimal_small_values() {
        let d = Decimal::from_rational(&rat(1, 2880), 12);
        assert_eq!(d.to_plain_string(), "0.000347222222");
        assert_eq!(d.to_significant(4), "0.0003472");
        let neg = Decimal::from_rational(&rat(-1, 8), 3);
        assert_eq!(neg.to_plain_string(), "-0.125");
    }

    #[test]
    fn to_f64_handles_huge_parts() {
        let big = num_traits::pow(BigInt::from(10), 400);
        let r = Rational::new(&big * 3, &big * 4);
        assert_eq!(to_f64(&r), 0.75);
    }
}

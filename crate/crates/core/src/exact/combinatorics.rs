//! Integer combinatorics: factorials, binomials, Bernoulli numbers.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::Rational;

pub fn factorial(n: u64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Binomial coefficient `n choose k`; zero when `k` lies outside `[0, n]`.
pub fn binom(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    // Multiplicative formula; every partial product is itself a binomial,
    // so the division is exact at each step.
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Binomial with a possibly negative upper index clamped to zero, as used by
/// identities whose summation ranges run past the support.
pub fn binom_i(n: i64, k: i64) -> BigInt {
    if n < 0 {
        BigInt::zero()
    } else {
        binom(n as u64, k)
    }
}

/// Bernoulli numbers `B_0 ..= B_n` (with `B_1 = -1/2`), computed exactly from
/// the recurrence `sum_{j<=m} binom(m+1, j) B_j = 0`.
pub fn bernoulli_numbers(n: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(n + 1);
    b.push(Rational::one());
    for m in 1..=n {
        let mut acc = Rational::zero();
        for (j, bj) in b.iter().enumerate() {
            acc += Rational::from_integer(binom(m as u64 + 1, j as i64)) * bj;
        }
        b.push(-acc / Rational::from_integer(BigInt::from(m + 1)));
    }
    b
}

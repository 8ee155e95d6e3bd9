//! `Lambda(x)` at real `x` and the distance `<x>` to the nearest other
//! prime power.

use super::ZetaError;

const MAX_X: f64 = 1e9;
const INTEGER_SLACK: f64 = 1e-9;

/// Largest `r` with `r^k <= n`.
fn integer_root(n: u64, k: u32) -> u64 {
    if k == 1 {
        return n;
    }
    let mut r = (n as f64).powf(1.0 / k as f64).round() as u64;
    let pow = |r: u64| (r as u128).checked_pow(k).unwrap_or(u128::MAX);
    while r > 0 && pow(r) > n as u128 {
        r -= 1;
    }
    while pow(r + 1) <= n as u128 {
        r += 1;
    }
    r
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut f = 3;
    while f * f <= n {
        if n.is_multiple_of(f) {
            return false;
        }
        f += 2;
    }
    true
}

/// `Some(p)` when `n = p^k` for a prime `p` and `k >= 1`. Every exponent is
/// tried by exact integer root extraction.
pub fn is_prime_power(n: u64) -> Option<u64> {
    if n < 2 {
        return None;
    }
    let max_k = 64 - n.leading_zeros();
    (1..=max_k).rev().find_map(|k| {
        let r = integer_root(n, k);
        ((r as u128).pow(k) == n as u128 && is_prime(r)).then_some(r)
    })
}

/// `(Lambda(x), <x>)`: `log p` when `x` is within `1e-9` of a prime power
/// `p^k` (else 0), and the distance from `x` to the nearest prime power
/// other than `x` itself.
pub fn vonmangoldt_real(x: f64) -> Result<(f64, f64), ZetaError> {
    if !(x > 1.0 && x <= MAX_X) {
        return Err(ZetaError::InvalidArgument(format!("x must lie in (1, 1e9], got {x}")));
    }
    let nearest = x.round() as u64;
    let on_integer = (x - nearest as f64).abs() <= INTEGER_SLACK;
    let value = if on_integer { is_prime_power(nearest).map_or(0.0, |p| (p as f64).ln()) } else { 0.0 };

    let skip = |m: u64| on_integer && m == nearest;
    let mut below = None;
    let mut m = x.floor() as u64;
    while m >= 2 {
        if !skip(m) && (m as f64) < x + INTEGER_SLACK && is_prime_power(m).is_some() {
            below = Some(m);
            break;
        }
        m -= 1;
    }
    let mut m = x.ceil() as u64;
    let above = loop {
        if !skip(m) && m as f64 > x - INTEGER_SLACK && is_prime_power(m).is_some() {
            break m;
        }
        m += 1;
    };
    let up = above as f64 - x;
    let distance = below.map_or(up, |b| up.min(x - b as f64));
    Ok((value, distance))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let (v, d) = vonmangoldt_real(8.0).unwrap();
        assert!((v - 2f64.ln()).abs() < 1e-15 && d == 1.0);
        assert_eq!(vonmangoldt_real(6.0).unwrap(), (0.0, 1.0));
        assert_eq!(vonmangoldt_real(1.5).unwrap(), (0.0, 0.5));
        let (v, d) = vonmangoldt_real(2.0).unwrap();
        assert!((v - 2f64.ln()).abs() < 1e-15 && d == 1.0);
        let (v, d) = vonmangoldt_real(23.0).unwrap();
        assert!((v - 23f64.ln()).abs() < 1e-15 && d == 2.0);
        assert!(vonmangoldt_real(1.0).is_err());
        assert!(vonmangoldt_real(2e9).is_err());
    }

    #[test]
    fn prime_powers() {
        assert_eq!(is_prime_power(1), None);
        assert_eq!(is_prime_power(1024), Some(2));
        assert_eq!(is_prime_power(3u64.pow(19)), Some(3));
        assert_eq!(is_prime_power(999_999_937), Some(999_999_937));
        assert_eq!(is_prime_power(36), None);
        assert_eq!(is_prime_power(961), Some(31));
    }

    #[test]
    fn near_integer_input() {
        let (v, _) = vonmangoldt_real(9.0 + 5e-10).unwrap();
        assert!((v - 3f64.ln()).abs() < 1e-15);
        let (v, d) = vonmangoldt_real(9.5).unwrap();
        assert_eq!(v, 0.0);
        assert_eq!(d, 0.5);
    }
}

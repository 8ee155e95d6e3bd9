use crate::exact::SeqDescriptor;

use super::DivisorError;

/// Largest sieve built unless the caller raises the cap.
pub const DEFAULT_SIEVE_CAP: u64 = 10_000_000;

/// `spf[n]` for `0 <= n <= bound` (`spf[0] = spf[1] = 0`), by a linear sieve.
pub fn smallest_prime_factors(bound: usize) -> Vec<u32> {
    let mut spf = vec![0u32; bound + 1];
    let mut primes: Vec<u32> = Vec::new();
    for i in 2..=bound {
        if spf[i] == 0 {
            spf[i] = i as u32;
            primes.push(i as u32);
        }
        let si = spf[i];
        for &p in &primes {
            let m = i * p as usize;
            if p > si || m > bound {
                break;
            }
            spf[m] = p;
        }
    }
    spf
}

/// Primes `p < bound`, by the sieve of Eratosthenes.
pub fn primes_below(bound: u64) -> Vec<u64> {
    let n = bound as usize;
    if n < 3 {
        return Vec::new();
    }
    let mut composite = vec![false; n];
    let mut primes = Vec::new();
    for i in 2..n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j < n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

/// Per-integer sequence values for `1 <= n <= bound`. Index 0 is unused and
/// holds zero in every array.
#[derive(Clone, Debug)]
pub struct SieveTable {
    bound: usize,
    ln: Vec<f64>,
    d: Vec<u32>,
    d1: Vec<f64>,
    d2: Vec<f64>,
    alpha: Vec<f64>,
    lambda: Vec<f64>,
    spf: Vec<u32>,
}

impl SieveTable {
    pub fn build(bound: u64) -> Result<Self, DivisorError> {
        Self::build_with_cap(bound, DEFAULT_SIEVE_CAP)
    }

    pub fn build_with_cap(bound: u64, cap: u64) -> Result<Self, DivisorError> {
        if bound < 2 {
            return Err(DivisorError::TooSmall(bound));
        }
        if bound > cap {
            return Err(DivisorError::OverCap { bound, cap });
        }
        let x = bound as usize;
        let ln: Vec<f64> = (0..=x).map(|n| if n == 0 { 0.0 } else { (n as f64).ln() }).collect();
        let mut d = vec![0u32; x + 1];
        let mut d1 = vec![0.0; x + 1];
        let mut d2 = vec![0.0; x + 1];
        let mut alpha = vec![0.0; x + 1];
        // Every factorization n = ab is visited once, as (a, b) with a the
        // outer index.
        for a in 1..=x {
            let la = ln[a];
            let la2 = la * la;
            let mut b = 1;
            let mut m = a;
            while m <= x {
                d[m] += 1;
                d1[m] += la;
                d2[m] += la2;
                alpha[m] += la * ln[b];
                b += 1;
                m += a;
            }
        }
        let spf = smallest_prime_factors(x);
        let mut lambda = vec![0.0; x + 1];
        for n in 2..=x {
            let p = spf[n] as usize;
            let mut m = n;
            while m % p == 0 {
                m /= p;
            }
            if m == 1 {
                lambda[n] = ln[p];
            }
        }
        Ok(Self { bound: x, ln, d, d1, d2, alpha, lambda, spf })
    }

    pub fn bound(&self) -> u64 {
        self.bound as u64
    }

    pub fn ln(&self) -> &[f64] {
        &self.ln
    }

    pub fn d(&self) -> &[u32] {
        &self.d
    }

    pub fn d1(&self) -> &[f64] {
        &self.d1
    }

    pub fn d2(&self) -> &[f64] {
        &self.d2
    }

    pub fn alpha(&self) -> &[f64] {
        &self.alpha
    }

    pub fn von_mangoldt(&self) -> &[f64] {
        &self.lambda
    }

    pub fn spf(&self) -> &[u32] {
        &self.spf
    }

    pub fn is_prime(&self, n: u64) -> bool {
        n >= 2 && n <= self.bound as u64 && self.spf[n as usize] as u64 == n
    }

    pub(crate) fn require(&self, needed: u64) -> Result<(), DivisorError> {
        if needed > self.bound as u64 {
            Err(DivisorError::OutOfRange { needed, bound: self.bound as u64 })
        } else {
            Ok(())
        }
    }

    /// `d^(order)(n) = sum_{a|n} log^order(a)` for every `n <= bound`.
    pub fn divisor_deriv(&self, order: u32) -> Vec<f64> {
        match order {
            0 => self.d.iter().map(|&v| v as f64).collect(),
            1 => self.d1.clone(),
            2 => self.d2.clone(),
            _ => self.convolution(order, 0),
        }
    }

    /// `(log^mu * log^nu)(n)` for every `n <= bound`, by a direct sieve over
    /// factorizations `n = ab`.
    pub fn convolution(&self, mu: u32, nu: u32) -> Vec<f64> {
        let x = self.bound;
        let pw = |v: f64, e: u32| if e == 0 { 1.0 } else { v.powi(e as i32) };
        let lb: Vec<f64> = self.ln.iter().map(|&l| pw(l, nu)).collect();
        let mut out = vec![0.0; x + 1];
        for a in 1..=x {
            let la = pw(self.ln[a], mu);
            let mut b = 1;
            let mut m = a;
            while m <= x {
                out[m] += la * lb[b];
                b += 1;
                m += a;
            }
        }
        out
    }

    /// Values of the sequence named by `desc` for every `n <= bound`.
    pub fn sequence(&self, desc: &SeqDescriptor) -> SequenceValues {
        let values = match desc {
            SeqDescriptor::DivisorDeriv(mu, 0) => self.divisor_deriv(*mu),
            SeqDescriptor::DivisorDeriv(0, nu) => self.divisor_deriv(*nu),
            SeqDescriptor::DivisorDeriv(1, 1) | SeqDescriptor::Alpha => self.alpha.clone(),
            SeqDescriptor::DivisorDeriv(mu, nu) => self.convolution(*mu, *nu),
            SeqDescriptor::LogWeighted(j, inner) => {
                let inner = self.sequence(inner);
                inner.values.iter().zip(&self.ln).map(|(v, l)| l.powi(*j as i32) * v).collect()
            }
        };
        SequenceValues { descriptor: desc.clone(), values }
    }
}

/// A sequence resolved against a sieve; `values[n]` for `n <= bound`.
#[derive(Clone, Debug, PartialEq)]
pub struct SequenceValues {
    pub descriptor: SeqDescriptor,
    pub values: Vec<f64>,
}

impl SequenceValues {
    pub fn get(&self, n: usize) -> f64 {
        self.values[n]
    }

    pub fn bound(&self) -> u64 {
        (self.values.len() - 1) as u64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        let s = SieveTable::build(12).unwrap();
        let (l2, l3) = (2f64.ln(), 3f64.ln());
        assert_eq!(s.d()[12], 6);
        assert_eq!(s.d()[1], 1);
        assert!((s.von_mangoldt()[8] - l2).abs() < 1e-15);
        assert_eq!(s.von_mangoldt()[6], 0.0);
        assert_eq!(s.von_mangoldt()[1], 0.0);
        assert!((s.d1()[6] - (l2 + l3 + 6f64.ln())).abs() < 1e-14);
        // log 1 log 4 + log 2 log 2 + log 4 log 1
        assert!((s.alpha()[4] - l2 * l2).abs() < 1e-14);
        assert_eq!((s.d1()[1], s.d2()[1], s.alpha()[1]), (0.0, 0.0, 0.0));
    }

    #[test]
    fn alpha_identity() {
        let s = SieveTable::build(10_000).unwrap();
        for n in 2..=10_000 {
            let other = s.ln()[n] * s.d1()[n] - s.d2()[n];
            let scale = s.ln()[n] * s.d1()[n];
            assert!((s.alpha()[n] - other).abs() <= 1e-12 * scale, "n = {n}");
        }
    }

    #[test]
    fn bounds_enforced() {
        assert_eq!(SieveTable::build(1).unwrap_err(), DivisorError::TooSmall(1));
        assert_eq!(SieveTable::build_with_cap(1000, 100).unwrap_err(), DivisorError::OverCap { bound: 1000, cap: 100 });
    }

    #[test]
    fn spf_and_primes() {
        let spf = smallest_prime_factors(100);
        assert_eq!(spf[97], 97);
        assert_eq!(spf[91], 7);
        assert_eq!(spf[64], 2);
        assert_eq!(primes_below(30), vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(primes_below(2), Vec::<u64>::new());
        assert_eq!(primes_below(1_000_000).len(), 78_498);
    }

    #[test]
    fn log_weighted_composes() {
        let s = SieveTable::build(500).unwrap();
        let w = s.sequence(&SeqDescriptor::log_weighted(2, SeqDescriptor::d_deriv(1)));
        for n in 1..=500 {
            assert_eq!(w.get(n), s.ln()[n].powi(2) * s.d1()[n]);
        }
    }
}

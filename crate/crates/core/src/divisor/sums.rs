//! Finite correlation sums and the exact identities relating them.
//!
//! ```text
//! T_{a,b}(t)   = sum_{n<=t} a(n) b(n) / n
//! T_{a,b;p}(t) = sum_{n<=t} a(n) b(pn) / n
//! M(a,b;X,delta) = sum_{mk<=X} Lambda(k) a(m) b(mk) / (k^(1-i delta) m)
//! ```
//!
//! For `T_{mu,nu;p} = T_{d^(mu),d^(nu);p}` the splitting
//! `sigma_z(pn) = sigma_z(p) sigma_z(n) - p^z sigma_z(n/p)` gives, after
//! `nu` derivatives in `z` at `z = 0`,
//!
//! ```text
//! T_{mu,nu;p}(t) = 2 T_{mu,nu}(t) + sum_{k<nu} C(nu,k) log^(nu-k)(p) T_{mu,k}(t)
//!                  - (1/p) sum_{k<=nu} C(nu,k) log^(nu-k)(p) T_{k,mu;p}(t/p).
//! ```

use num_complex::Complex64;

use super::sieve::{SequenceValues, SieveTable};
use super::DivisorError;
use crate::numeric::{ComplexSum, NeumaierSum};
use crate::zeta::ZetaEngine;

const BETA_TOLERANCE: f64 = 1e-10;

fn floor_index(t: f64) -> usize {
    if t < 1.0 {
        0
    } else {
        t.floor() as usize
    }
}

/// Divisors of `n <= bound`, from the smallest-prime-factor table.
fn divisors(sieve: &SieveTable, n: usize) -> Vec<usize> {
    let spf = sieve.spf();
    let mut divs = vec![1usize];
    let mut m = n;
    while m > 1 {
        let p = spf[m] as usize;
        let mut e = 0;
        while m.is_multiple_of(p) {
            m /= p;
            e += 1;
        }
        let base = divs.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..base {
                divs.push(divs[i] * pk);
            }
        }
    }
    divs
}

/// `beta_t(n)` by both the convolution `(a_t * a_t)(n)` and the expansion
/// `l^2 d - 2 l d^(1) + alpha`; returns the expansion after checking the two
/// agree to `1e-10` relative to `l^2 d + 2 l |d^(1)| + alpha`.
pub fn beta_t(sieve: &SieveTable, n: u64, t: f64) -> Result<f64, DivisorError> {
    let two_pi = 2.0 * std::f64::consts::PI;
    if !(t > two_pi) {
        return Err(DivisorError::InvalidArgument(format!("beta_t needs t > 2 pi, got {t}")));
    }
    if n == 0 || n as f64 > t / two_pi {
        return Err(DivisorError::InvalidArgument(format!("beta_t needs 1 <= n <= t/2pi, got n = {n}")));
    }
    sieve.require(n)?;
    let n = n as usize;
    let l = (t / two_pi).ln();
    let ln = sieve.ln();
    let direct: NeumaierSum = divisors(sieve, n).into_iter().map(|a| (l - ln[a]) * (l - ln[n / a])).collect();
    let direct = direct.sum();
    let d = sieve.d()[n] as f64;
    let (d1, alpha) = (sieve.d1()[n], sieve.alpha()[n]);
    let expanded = l * l * d - 2.0 * l * d1 + alpha;
    let scale = l * l * d + 2.0 * l * d1.abs() + alpha.abs();
    if (direct - expanded).abs() > BETA_TOLERANCE * scale {
        return Err(DivisorError::Inconsistent {
            what: format!("beta_t({n}) at t = {t}"),
            left: direct,
            right: expanded,
        });
    }
    Ok(expanded)
}

/// `T_{a,b}(t)`, summed in ascending `n`.
pub fn sum_t(a: &SequenceValues, b: &SequenceValues, t: f64) -> Result<f64, DivisorError> {
    let top = floor_index(t);
    let bound = a.bound().min(b.bound());
    if top as u64 > bound {
        return Err(DivisorError::OutOfRange { needed: top as u64, bound });
    }
    let s: NeumaierSum = (1..=top).map(|n| a.values[n] * b.values[n] / n as f64).collect();
    Ok(s.sum())
}

/// `T_{a,b;p}(t)`. The sieve supplies the primality test and must reach
/// `p * floor(t)`.
pub fn sum_tp(sieve: &SieveTable, a: &SequenceValues, b: &SequenceValues, p: u64, t: f64) -> Result<f64, DivisorError> {
    if !sieve.is_prime(p) {
        return Err(if p <= sieve.bound() {
            DivisorError::NotPrime(p)
        } else {
            DivisorError::OutOfRange { needed: p, bound: sieve.bound() }
        });
    }
    let top = floor_index(t);
    let bound = a.bound().min(b.bound());
    if top as u64 > bound || p * top as u64 > bound {
        return Err(DivisorError::OutOfRange { needed: p * top as u64, bound });
    }
    let p = p as usize;
    let s: NeumaierSum = (1..=top).map(|n| a.values[n] * b.values[p * n] / n as f64).collect();
    Ok(s.sum())
}

/// `M(a,b;X,delta)` by direct double summation over prime powers `k`.
pub fn sum_m(
    sieve: &SieveTable,
    a: &SequenceValues,
    b: &SequenceValues,
    x: f64,
    delta: f64,
) -> Result<Complex64, DivisorError> {
    let top = floor_index(x);
    sieve.require(top as u64)?;
    let bound = a.bound().min(b.bound());
    if top as u64 > bound {
        return Err(DivisorError::OutOfRange { needed: top as u64, bound });
    }
    let lambda = sieve.von_mangoldt();
    let ln = sieve.ln();
    let mut total = ComplexSum::new();
    for k in 2..=top {
        if lambda[k] == 0.0 {
            continue;
        }
        let inner: NeumaierSum = (1..=top / k).map(|m| a.values[m] * b.values[m * k] / m as f64).collect();
        let twist = Complex64::from_polar(lambda[k] / k as f64, delta * ln[k]);
        total += twist * inner.sum();
    }
    Ok(total.sum())
}

/// Outcome of evaluating both sides of an exact identity in floating point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IdentityResidual {
    pub lhs: f64,
    pub rhs: f64,
    /// `|lhs - rhs|`.
    pub residual: f64,
    /// Residual over the sum of magnitudes of all terms on both sides.
    pub relative: f64,
}

impl IdentityResidual {
    fn new(lhs: f64, rhs: f64, magnitude: f64) -> Self {
        let residual = (lhs - rhs).abs();
        let relative = if magnitude == 0.0 { residual } else { residual / magnitude };
        Self { lhs, rhs, residual, relative }
    }
}

fn binom_f(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Both sides of the shifted-sum splitting identity for `T_{mu,nu;p}(t)`.
pub fn check_stylo(sieve: &SieveTable, mu: u32, nu: u32, p: u64, t: f64) -> Result<IdentityResidual, DivisorError> {
    let orders: Vec<SequenceValues> =
        (0..=mu.max(nu)).map(|k| sieve.sequence(&crate::exact::SeqDescriptor::d_deriv(k))).collect();
    let dk = |k: u32| &orders[k as usize];
    let lp = (p as f64).ln();
    let lhs = sum_tp(sieve, dk(mu), dk(nu), p, t)?;
    let mut rhs = NeumaierSum::new();
    let mut magnitude = lhs.abs();
    let mut push = |v: f64, rhs: &mut NeumaierSum| {
        magnitude += v.abs();
        rhs.add(v);
    };
    push(2.0 * sum_t(dk(mu), dk(nu), t)?, &mut rhs);
    for k in 0..nu {
        push(binom_f(nu, k) * lp.powi((nu - k) as i32) * sum_t(dk(mu), dk(k), t)?, &mut rhs);
    }
    for k in 0..=nu {
        let shifted = sum_tp(sieve, dk(k), dk(mu), p, t / p as f64)?;
        push(-binom_f(nu, k) * lp.powi((nu - k) as i32) * shifted / p as f64, &mut rhs);
    }
    Ok(IdentityResidual::new(lhs, rhs.sum(), magnitude))
}

/// `sigma_z(n) = sum_{a|n} a^z` for `n <= top`.
fn sigma_table(top: usize, z: f64) -> Vec<f64> {
    let mut out = vec![0.0; top + 1];
    for a in 1..=top {
        let az = (a as f64).powf(z);
        let mut m = a;
        while m <= top {
            out[m] += az;
            m += a;
        }
    }
    out
}

/// Largest residual, over `mu in {0,1,2}`, of
/// `sum_{n<=t} d^(mu)(n) sigma_z(pn)/n
///   = sigma_z(p) sum_{j<=t} d^(mu)(j) sigma_z(j)/j - (p^z/p) sum_{j<=t/p} d^(mu)(pj) sigma_z(j)/j`.
pub fn check_pain(sieve: &SieveTable, z: f64, p: u64, t: f64) -> Result<IdentityResidual, DivisorError> {
    if z.abs() > 1.0 {
        return Err(DivisorError::InvalidArgument(format!("|z| must be at most 1, got {z}")));
    }
    if !sieve.is_prime(p) {
        return Err(DivisorError::NotPrime(p));
    }
    let top = floor_index(t);
    sieve.require(p * top as u64)?;
    let pu = p as usize;
    let sigma = sigma_table(pu * top.max(1), z);
    let pz = (p as f64).powf(z);
    let sigma_p = 1.0 + pz;
    let mut worst = IdentityResidual::new(0.0, 0.0, 0.0);
    for mu in 0..=2 {
        let dm = sieve.divisor_deriv(mu);
        let lhs: NeumaierSum = (1..=top).map(|n| dm[n] * sigma[pu * n] / n as f64).collect();
        let first: NeumaierSum = (1..=top).map(|j| dm[j] * sigma[j] / j as f64).collect();
        let second: NeumaierSum = (1..=top / pu).map(|j| dm[pu * j] * sigma[j] / j as f64).collect();
        let (a, b) = (sigma_p * first.sum(), pz / p as f64 * second.sum());
        let r = IdentityResidual::new(lhs.sum(), a - b, lhs.sum().abs() + a.abs() + b.abs());
        if r.relative > worst.relative || mu == 0 {
            worst = r;
        }
    }
    Ok(worst)
}

/// `sigma_{u,v}(n) = sum_{ab=n} a^u b^v` for `n <= top`.
pub fn sigma_pair_table(u: f64, v: f64, top: usize) -> Vec<f64> {
    let pw = |e: f64| -> Vec<f64> { (0..=top).map(|n| if n == 0 { 0.0 } else { (n as f64).powf(e) }).collect() };
    let (au, bv) = (pw(u), pw(v));
    let mut out = vec![0.0; top + 1];
    for (a, &wa) in au.iter().enumerate().skip(1) {
        let mut b = 1;
        let mut m = a;
        while m <= top {
            out[m] += wa * bv[b];
            b += 1;
            m += a;
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RamanujanComparison {
    pub lhs: f64,
    pub rhs: f64,
    pub relative: f64,
}

/// Truncated Dirichlet series `sum_{n<=N} sigma_{-z1,-z2}(n) sigma_{-z3,-z4}(n) / n^(s+1)`
/// against its product of zeta values
/// `zeta(1+s+z2+z4) zeta(1+s+z1+z4) zeta(1+s+z2+z3) zeta(1+s+z1+z3) / zeta(2+2s+z1+z2+z3+z4)`.
pub fn ramanujan_ratio(
    engine: &ZetaEngine,
    s: f64,
    z: [f64; 4],
    n_terms: usize,
) -> Result<RamanujanComparison, DivisorError> {
    if !(s > 1.0) || z.iter().any(|zi| zi.abs() > 0.25) || n_terms == 0 {
        return Err(DivisorError::InvalidArgument(format!(
            "need s > 1, |z_i| <= 1/4 and N >= 1 (s = {s}, z = {z:?}, N = {n_terms})"
        )));
    }
    let [z1, z2, z3, z4] = z;
    let left = sigma_pair_table(-z1, -z2, n_terms);
    let right = sigma_pair_table(-z3, -z4, n_terms);
    // Ascending order: the summands decrease, so the compensated sum loses
    // nothing to the large early terms.
    let lhs: NeumaierSum = (1..=n_terms).map(|n| left[n] * right[n] * (n as f64).powf(-(s + 1.0))).collect();
    let zr = |x: f64| -> Result<f64, DivisorError> {
        engine.zeta(Complex64::new(x, 0.0)).map(|v| v.re).map_err(|e| DivisorError::InvalidArgument(e.to_string()))
    };
    let num = zr(1.0 + s + z2 + z4)? * zr(1.0 + s + z1 + z4)? * zr(1.0 + s + z2 + z3)? * zr(1.0 + s + z1 + z3)?;
    let rhs = num / zr(2.0 + 2.0 * s + z1 + z2 + z3 + z4)?;
    let lhs = lhs.sum();
    Ok(RamanujanComparison { lhs, rhs, relative: (lhs - rhs).abs() / rhs.abs() })
}

/// `sum_{r<n<=x} d(n) d(n-r) / (sigma_{-1}(r) x log^2 x)`.
pub fn shifted_divisor_ratio(sieve: &SieveTable, r: u64, x: f64) -> Result<f64, DivisorError> {
    let top = floor_index(x);
    if r == 0 || r as f64 >= x {
        return Err(DivisorError::InvalidArgument(format!("need 1 <= r < x, got r = {r}, x = {x}")));
    }
    sieve.require(top as u64)?;
    let d = sieve.d();
    let r = r as usize;
    let mut s = 0u64;
    for n in r + 1..=top {
        s += d[n] as u64 * d[n - r] as u64;
    }
    let sigma_m1: f64 = (1..=r).filter(|k| r.is_multiple_of(*k)).map(|k| 1.0 / k as f64).sum();
    Ok(s as f64 / (sigma_m1 * x * x.ln().powi(2)))
}

/// `psi(x) = sum_{n<=x} Lambda(n)`.
pub fn chebyshev_psi(sieve: &SieveTable, x: f64) -> Result<f64, DivisorError> {
    let top = floor_index(x);
    sieve.require(top as u64)?;
    let s: NeumaierSum = sieve.von_mangoldt()[..=top].iter().copied().collect();
    Ok(s.sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::SeqDescriptor;

    fn d0(s: &SieveTable) -> SequenceValues {
        s.sequence(&SeqDescriptor::d())
    }

    #[test]
    fn tiny_sums() {
        let s = SieveTable::build(100).unwrap();
        let d = d0(&s);
        assert_eq!(sum_t(&d, &d, 2.0).unwrap(), 3.0);
        assert_eq!(sum_t(&d, &d, 0.5).unwrap(), 0.0);
        assert_eq!(sum_tp(&s, &d, &d, 2, 1.0).unwrap(), 2.0);
        assert_eq!(sum_tp(&s, &d, &d, 4, 1.0).unwrap_err(), DivisorError::NotPrime(4));
        assert!(matches!(sum_tp(&s, &d, &d, 7, 20.0), Err(DivisorError::OutOfRange { .. })));
    }

    #[test]
    fn beta_small_cases() {
        let s = SieveTable::build(1000).unwrap();
        let t = 100.0;
        let l = (t / (2.0 * std::f64::consts::PI)).ln();
        assert!((beta_t(&s, 1, t).unwrap() - l * l).abs() < 1e-14);
        let b4 = beta_t(&s, 4, t).unwrap();
        let l2 = 2f64.ln();
        let direct = l * (l - 2.0 * l2) + (l - l2).powi(2) + (l - 2.0 * l2) * l;
        assert!((b4 - direct).abs() < 1e-12);
        assert!(beta_t(&s, 16, t).is_err());
        assert!(beta_t(&s, 1, 6.0).is_err());
    }

    #[test]
    fn sum_m_hand_case() {
        let s = SieveTable::build(100).unwrap();
        let d = d0(&s);
        let got = sum_m(&s, &d, &d, 10.0, 0.0).unwrap();
        // prime powers k <= 10 and m <= 10/k, written out
        let dd = |n: usize| s.d()[n] as f64;
        let mut want = 0.0;
        for (k, lam) in [(2, 2f64), (3, 3.0), (4, 2.0), (5, 5.0), (7, 7.0), (8, 2.0), (9, 3.0)] {
            for m in 1..=10 / k {
                want += lam.ln() / k as f64 * dd(m) * dd(m * k) / m as f64;
            }
        }
        assert!((got.re - want).abs() < 1e-13 && got.im == 0.0);
        let plus = sum_m(&s, &d, &d, 50.0, 0.7).unwrap();
        let minus = sum_m(&s, &d, &d, 50.0, -0.7).unwrap();
        assert_eq!(plus, minus.conj());
    }

    #[test]
    fn splitting_identities_small() {
        let s = SieveTable::build(20_000).unwrap();
        let r = check_stylo(&s, 1, 2, 5, 1000.0).unwrap();
        assert!(r.relative < 1e-12, "{r:?}");
        let e = check_stylo(&s, 0, 0, 2, 0.5).unwrap();
        assert_eq!((e.lhs, e.rhs, e.residual), (0.0, 0.0, 0.0));
        for z in [0.0, 0.25, 0.5, -1.0] {
            let r = check_pain(&s, z, 2, 1000.0).unwrap();
            assert!(r.relative < 1e-12, "z = {z}: {r:?}");
        }
        assert_eq!(check_pain(&s, 0.5, 2, 0.5).unwrap().residual, 0.0);
        assert!(check_pain(&s, 1.5, 2, 10.0).is_err());
    }

    #[test]
    fn shifted_ratio_and_psi() {
        let s = SieveTable::build(100_000).unwrap();
        for r in [1, 6] {
            let v = shifted_divisor_ratio(&s, r, 1e5).unwrap();
            assert!(v > 0.0 && v < 2.0, "r = {r}: {v}");
        }
        let tiny = shifted_divisor_ratio(&s, 99_999, 1e5).unwrap();
        // the single term d(x) d(1)
        assert!(tiny > 0.0 && tiny < 1e-5);
        let psi = chebyshev_psi(&s, 1e5).unwrap();
        assert!((psi / 1e5 - 1.0).abs() < 0.01);
    }

    #[test]
    fn divisor_enumeration() {
        let s = SieveTable::build(1000).unwrap();
        let mut dv = divisors(&s, 360);
        dv.sort_unstable();
        let want: Vec<usize> = (1..=360).filter(|k| 360 % k == 0).collect();
        assert_eq!(dv, want);
        assert_eq!(divisors(&s, 1), vec![1]);
    }
}

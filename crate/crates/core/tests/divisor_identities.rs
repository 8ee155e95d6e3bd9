use proptest::prelude::*;
use zmoments::divisor::{
    chebyshev_psi, check_pain, check_stylo, ramanujan_ratio, shifted_divisor_ratio, sum_t, SieveTable,
};
use zmoments::exact::SeqDescriptor;
use zmoments::zeta::{EvalConfig, ZetaEngine};

fn enumerate(n: usize, mu: i32, nu: i32) -> f64 {
    (1..=n).filter(|a| n.is_multiple_of(*a)).map(|a| (a as f64).ln().powi(mu) * ((n / a) as f64).ln().powi(nu)).sum()
}

#[test]
fn convolutions_match_divisor_pairs() {
    let sieve = SieveTable::build(10_000).unwrap();
    for mu in 0..=2 {
        for nu in 0..=2 {
            let conv = sieve.convolution(mu, nu);
            for (n, &v) in conv.iter().enumerate().skip(1) {
                let direct = enumerate(n, mu as i32, nu as i32);
                assert!((v - direct).abs() <= 1e-12 * direct.abs().max(1.0), "n = {n}, ({mu},{nu})");
            }
        }
    }
}

#[test]
fn shifted_sum_splitting_grid() {
    let sieve = SieveTable::build(200_000).unwrap();
    for (mu, nu) in [(0, 0), (0, 1), (1, 0), (1, 1), (1, 2), (2, 2)] {
        for p in [2, 3, 5, 7, 97] {
            for t in [0.5, 10.0, 1e3, 2e3] {
                let r = check_stylo(&sieve, mu, nu, p, t).unwrap();
                assert!(r.relative <= 1e-9, "({mu},{nu}) p={p} t={t}: {r:?}");
            }
        }
    }
}

#[test]
fn sigma_splitting_grid() {
    let sieve = SieveTable::build(200_000).unwrap();
    for z in [-1.0, -0.5, 0.0, 0.5, 1.0] {
        for p in [2, 3, 13] {
            for t in [0.5, 100.0, 1e3, 1e4] {
                let r = check_pain(&sieve, z, p, t).unwrap();
                assert!(r.relative <= 1e-9, "z={z} p={p} t={t}: {r:?}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]
    #[test]
    fn diagonal_sum_is_symmetric(mu in 0u32..=2, nu in 0u32..=2, t in 1.0f64..5000.0) {
        let sieve = SieveTable::build(5000).unwrap();
        let a = sieve.sequence(&SeqDescriptor::d_deriv(mu));
        let b = sieve.sequence(&SeqDescriptor::d_deriv(nu));
        prop_assert_eq!(sum_t(&a, &b, t).unwrap(), sum_t(&b, &a, t).unwrap());
    }
}

#[test]
fn ramanujan_product_at_a_million_terms() {
    let engine = ZetaEngine::new(EvalConfig::default()).unwrap();
    for z in [[0.0; 4], [0.1, 0.0, 0.0, 0.0], [0.25, -0.25, 0.1, -0.05]] {
        let r = ramanujan_ratio(&engine, 2.0, z, 1_000_000).unwrap();
        assert!(r.relative <= 1e-6, "{z:?}: {r:?}");
    }
}

#[test]
fn prime_number_theorem_trend() {
    let sieve = SieveTable::build(1_000_000).unwrap();
    let dev: Vec<f64> = [1e4, 1e5, 1e6].iter().map(|&x| (chebyshev_psi(&sieve, x).unwrap() / x - 1.0).abs()).collect();
    assert!(dev[0] < 0.02 && dev[2] < dev[0], "{dev:?}");
}

#[test]
fn shifted_divisor_ratio_is_bounded() {
    let sieve = SieveTable::build(100_000).unwrap();
    for r in [1, 2, 6, 30] {
        let v = shifted_divisor_ratio(&sieve, r, 1e5).unwrap();
        assert!(v > 0.0 && v < 2.0, "r = {r}: {v}");
    }
}

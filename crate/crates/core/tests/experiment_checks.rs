use std::sync::OnceLock;

use num_complex::Complex64;
use zmoments::divisor::SieveTable;
use zmoments::exact::SeqDescriptor;
use zmoments::experiments::{
    check_bunny, corollary1_empirical, dirichlet_pair_sum, discrete_moment, landau_sum, theorem2_coefficient_f64,
    theorem2_empirical, DerivCache, ExperimentError, Shift,
};
use zmoments::zeta::{load_zeros, EvalConfig, ZeroTable, ZetaEngine};

const ZEROS: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/zeros_100k.txt");

/// First 12000 zeros, up to height about 11600.
fn zeros() -> &'static ZeroTable {
    static Z: OnceLock<ZeroTable> = OnceLock::new();
    Z.get_or_init(|| load_zeros(ZEROS).unwrap().truncated(12_000))
}

fn sieve() -> &'static SieveTable {
    static S: OnceLock<SieveTable> = OnceLock::new();
    S.get_or_init(|| SieveTable::build(2_000).unwrap())
}

#[test]
fn landau_at_one_counts_zeros() {
    let r = landau_sum(1.0, zeros(), &[100.0, 1e4]).unwrap();
    for p in &r.points {
        assert_eq!(p.empirical, Complex64::new(p.zeros as f64, 0.0));
    }
}

#[test]
fn landau_prime_and_non_prime_power() {
    let two = landau_sum(2.0, zeros(), &[1e4]).unwrap();
    assert!((0.8..=1.2).contains(&two.last().ratio));
    let six = landau_sum(6.0, zeros(), &[2.5e3, 5e3, 1e4]).unwrap();
    let scaled = six.extra("abs_over_t");
    assert!(scaled.windows(2).all(|w| w[1] < w[0]), "{scaled:?}");
    assert!(matches!(landau_sum(2.0, zeros(), &[1e6]), Err(ExperimentError::BeyondTable { .. })));
}

#[test]
fn moments_below_first_zero_vanish() {
    let engine = ZetaEngine::new(EvalConfig::default()).unwrap();
    let cache = DerivCache::compute(&engine, zeros(), 100.0).unwrap();
    assert_eq!(cache.len(), 29);
    for k in [1, 2] {
        let r = discrete_moment(k, zeros(), &cache, &[10.0, 100.0]).unwrap();
        assert_eq!(r.points[0].empirical, Complex64::new(0.0, 0.0));
        assert!(r.points[1].empirical.re > 0.0);
    }
    assert!(discrete_moment(2, zeros(), &cache, &[200.0]).is_err());
}

#[test]
fn pair_sums_are_real_and_conjugate() {
    let (d, d1) = (SeqDescriptor::d(), SeqDescriptor::d_deriv(1));
    let t = 5e3;
    let dd = dirichlet_pair_sum(&d, &d, zeros(), sieve(), t, 0.0, 0).unwrap();
    assert!(dd.im.abs() <= 1e-9 * dd.norm());
    let ab = dirichlet_pair_sum(&d, &d1, zeros(), sieve(), t, 0.0, 2).unwrap();
    let ba = dirichlet_pair_sum(&d1, &d, zeros(), sieve(), t, 0.0, 2).unwrap();
    assert!((ab - ba.conj()).norm() <= 1e-12 * ab.norm());
}

#[test]
fn bunny_deviation_decreases() {
    let d = SeqDescriptor::d();
    let r = check_bunny(&d, &d, zeros(), sieve(), &[5.0, 2e3, 1e4], Shift::Delta(0.0)).unwrap();
    assert_eq!(r.points[0].empirical, Complex64::new(0.0, 0.0));
    assert_eq!(r.points[0].predicted, Complex64::new(0.0, 0.0));
    assert!(r.points[2].ratio < r.points[1].ratio, "{:?}", r.ratios());
}

#[test]
fn corollary_routes_agree() {
    let c = corollary1_empirical(zeros(), sieve(), &[5e3, 1e4]).unwrap();
    for p in &c.s_beta.points {
        assert!(p.extra["route_relative"] <= 1e-8);
    }
}

#[test]
fn theorem2_at_zero_is_the_plain_pair_sum() {
    let d = SeqDescriptor::d();
    for t in [3e3, 1e4] {
        let r = theorem2_empirical(0.0, zeros(), sieve(), &[t]).unwrap();
        let direct = dirichlet_pair_sum(&d, &d, zeros(), sieve(), t, 0.0, 0).unwrap();
        assert_eq!(r.last().empirical, direct);
    }
    assert_eq!(theorem2_coefficient_f64(1.5), theorem2_coefficient_f64(-1.5));
    assert!(theorem2_empirical(5.0, zeros(), sieve(), &[1e3]).is_err());
}

#[test]
fn thread_count_does_not_change_results() {
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| corollary1_empirical(zeros(), sieve(), &[2e3, 6e3]).unwrap())
    };
    assert_eq!(run(1), run(4));
}

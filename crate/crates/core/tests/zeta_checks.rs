use num_complex::Complex64;
use proptest::prelude::*;
use zmoments::zeta::{chi, load_zeros, rvm_estimate, EvalConfig, ZetaEngine};

const ZEROS: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/zeros_100k.txt");

fn engine() -> ZetaEngine {
    ZetaEngine::new(EvalConfig::default()).unwrap()
}

#[test]
fn chi_reflection_grid() {
    for sigma in [0.3, 0.5, 0.7] {
        for t in [10.0, 1e2, 1e3, 1e4] {
            let s = Complex64::new(sigma, t);
            let prod = chi(s).unwrap() * chi(Complex64::new(1.0, 0.0) - s).unwrap();
            assert!((prod - 1.0).norm() <= 1e-9, "s = {s}: {prod}");
        }
    }
}

#[test]
fn derivative_matches_finite_differences() {
    let e = engine();
    let h = 1e-5;
    for i in 0..20 {
        let s = Complex64::new(0.2 + 0.05 * i as f64, 5.0 + 250.0 * i as f64);
        let d = e.zeta_deriv(s).unwrap();
        let fd = (e.zeta(s + h).unwrap() - e.zeta(s - h).unwrap()) / (2.0 * h);
        assert!((d - fd).norm() <= 1e-5 * d.norm().max(1.0), "s = {s}: {d} vs {fd}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn conjugate_arguments_give_conjugate_values(sigma in -1.0f64..3.0, t in 0.5f64..2000.0) {
        let e = engine();
        let s = Complex64::new(sigma, t);
        prop_assert_eq!(e.zeta(s.conj()).unwrap(), e.zeta(s).unwrap().conj());
        prop_assert_eq!(e.zeta_deriv(s.conj()).unwrap(), e.zeta_deriv(s).unwrap().conj());
    }
}

#[test]
fn shipped_table_loads_and_vanishes() {
    let zeros = load_zeros(ZEROS).unwrap();
    assert_eq!(zeros.len(), 100_000);
    assert!((zeros.ordinates()[0] - 14.134725142).abs() < 1e-8);
    let e = engine();
    for &g in &zeros.ordinates()[..100] {
        assert!(e.zeta(Complex64::new(0.5, g)).unwrap().norm() <= 1e-6, "gamma = {g}");
    }
    let t = zeros.max_ordinate();
    assert!((zeros.len() as f64 - rvm_estimate(t)).abs() < 5.0);
}

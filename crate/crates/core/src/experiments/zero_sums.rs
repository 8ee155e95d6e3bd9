//! The individual experiments.
//!
//! With `L = log(T/2pi)` and `a_2 = 6/pi^2`:
//!
//! ```text
//! sum_{gamma<=T} x^rho                       ~ -(T/2pi) Lambda(x)
//! J_k(T) = sum_{gamma<=T} |zeta'(rho)|^2k    ~ G(k+2)^2/G(2k+3) a_k (T/2pi) L^(k(k+2)+1)
//! I(a,b;T,delta) = sum D_a(rho+i delta) D_b(1-rho-i delta)
//!     ~ (T/2pi) (L T_{a,b}(T/2pi) - M(a,b;T/2pi,delta) - M(b,a;T/2pi,-delta))
//! I(d,d;T,lambda/L)                          ~ (3/pi^3) (1/5! - 4 sum_j (-1)^j lambda^2j/(5+2j)!) T L^5
//! ```

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use super::dirichlet::{dot, DirichletBasis};
use super::{check_grid, reduce_prefixes, ExperimentError, ExperimentResult, TrendPoint};
use crate::divisor::{sum_m, sum_t, SieveTable};
use crate::exact::constants::{corollary1_coefficients, rmt_leading_constant, theorem1_bounds};
use crate::exact::rational::to_f64;
use crate::exact::series::theorem2_coefficient;
use crate::exact::{Rational, SeqDescriptor, A2};
use crate::numeric::{rel_diff, ComplexSum};
use crate::zeta::{vonmangoldt_real, ZeroTable, ZetaEngine};

/// Prime bound for the Euler product `a_k` in moment predictions.
pub const RMT_PRIME_BOUND: u64 = 10_000_000;
/// Largest relative disagreement between the two `S_beta` assemblies.
pub const ROUTE_TOLERANCE: f64 = 1e-8;

fn big_l(t: f64) -> f64 {
    (t / (2.0 * PI)).ln()
}

fn ends_for(zeros: &ZeroTable, t_grid: &[f64]) -> Vec<usize> {
    t_grid.iter().map(|&t| zeros.count_up_to(t)).collect()
}

fn point(t: f64, zeros: usize, empirical: Complex64, predicted: Complex64, ratio: f64) -> TrendPoint {
    TrendPoint { t, zeros, empirical, predicted, ratio, extra: Default::default() }
}

fn fmt_grid(t_grid: &[f64]) -> String {
    t_grid.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(",")
}

/// `sum_{gamma<=T} x^(1/2 + i gamma)` against `-(T/2pi) Lambda(x)`.
///
/// `ratio` is `Re(sum) / predicted` when `x` is a prime power and
/// `|sum| / T` otherwise. `x = 1` is accepted and gives `N(T)`.
pub fn landau_sum(x: f64, zeros: &ZeroTable, t_grid: &[f64]) -> Result<ExperimentResult, ExperimentError> {
    if !(1.0..=1e3).contains(&x) {
        return Err(ExperimentError::InvalidArgument(format!("x must lie in [1, 1000], got {x}")));
    }
    check_grid(t_grid, zeros.max_ordinate())?;
    let (lambda, distance) = if x == 1.0 { (0.0, f64::NAN) } else { vonmangoldt_real(x)? };
    let ends = ends_for(zeros, t_grid);
    let (sqrt_x, ln_x) = (x.sqrt(), x.ln());
    let ords = zeros.ordinates();
    let sums = reduce_prefixes(&ends, 1, |idx, acc| {
        for &i in idx {
            acc[0].add(Complex64::from_polar(sqrt_x, ords[i] * ln_x));
        }
    });
    let mut result = ExperimentResult::new("landau_sum", &[("x", x.to_string()), ("T_grid", fmt_grid(t_grid))]);
    for ((&t, &n), s) in t_grid.iter().zip(&ends).zip(sums) {
        let predicted = -t / (2.0 * PI) * lambda;
        let empirical = s[0];
        let ratio = if lambda > 0.0 { empirical.re / predicted } else { empirical.norm() / t };
        let mut p = point(t, n, empirical, Complex64::new(predicted, 0.0), ratio);
        p.extra.insert("abs_over_t".into(), empirical.norm() / t);
        p.extra.insert("von_mangoldt".into(), lambda);
        if distance.is_finite() {
            p.extra.insert("prime_power_distance".into(), distance);
        }
        result.points.push(p);
    }
    Ok(result)
}

/// `zeta'(1/2 + i gamma)` for a prefix of a zero table, computed once and
/// shared by the moment experiments.
#[derive(Clone, Debug, PartialEq)]
pub struct DerivCache {
    values: Vec<Complex64>,
}

impl DerivCache {
    pub fn compute(engine: &ZetaEngine, zeros: &ZeroTable, t_max: f64) -> Result<Self, ExperimentError> {
        let ords = zeros.up_to(t_max);
        let values =
            ords.par_iter().map(|&g| engine.zeta_deriv(Complex64::new(0.5, g))).collect::<Result<Vec<_>, _>>()?;
        Ok(Self { values })
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// `J_k(T)` for `k` in `{1, 2}`.
///
/// `ratio` is `J_k` over the random-matrix prediction. Extras:
/// `normalized = J_k / (T L^(k(k+2)+1))`, `rmt_constant`, and for `k = 2`
/// the fourth-moment bound constants `c1/pi^3`, `c2/pi^3`.
pub fn discrete_moment(
    k: u32,
    zeros: &ZeroTable,
    cache: &DerivCache,
    t_grid: &[f64],
) -> Result<ExperimentResult, ExperimentError> {
    if !(1..=2).contains(&k) {
        return Err(ExperimentError::InvalidArgument(format!("k must be 1 or 2, got {k}")));
    }
    check_grid(t_grid, zeros.max_ordinate())?;
    let ends = ends_for(zeros, t_grid);
    let need = *ends.last().unwrap();
    if need > cache.len() {
        return Err(ExperimentError::InvalidArgument(format!(
            "derivative cache holds {} zeros, {need} needed",
            cache.len()
        )));
    }
    let rmt = rmt_leading_constant(k, RMT_PRIME_BOUND)?;
    let bands = if k == 2 {
        let b = theorem1_bounds()?;
        Some((b.c1.to_f64() / PI.powi(3), b.c2.to_f64() / PI.powi(3)))
    } else {
        None
    };
    let vals = cache.values();
    let sums = reduce_prefixes(&ends, 1, |idx, acc| {
        for &i in idx {
            acc[0].add(Complex64::new(vals[i].norm_sqr().powi(k as i32), 0.0));
        }
    });
    let exponent = (k * (k + 2) + 1) as i32;
    let mut result = ExperimentResult::new("discrete_moment", &[("k", k.to_string()), ("T_grid", fmt_grid(t_grid))]);
    for ((&t, &n), s) in t_grid.iter().zip(&ends).zip(sums) {
        let scale = if t > 2.0 * PI { t * big_l(t).powi(exponent) } else { 0.0 };
        let predicted = rmt.leading * scale;
        let j = s[0].re;
        let ratio = if predicted > 0.0 { j / predicted } else { 0.0 };
        let mut p = point(t, n, Complex64::new(j, 0.0), Complex64::new(predicted, 0.0), ratio);
        p.extra.insert("normalized".into(), if scale > 0.0 { j / scale } else { 0.0 });
        p.extra.insert("rmt_constant".into(), rmt.leading);
        if let Some((lo, hi)) = bands {
            p.extra.insert("theorem1_low".into(), lo);
            p.extra.insert("theorem1_high".into(), hi);
        }
        result.points.push(p);
    }
    Ok(result)
}

/// One weighted pair `sum log^N(gamma/2pi) D_a(rho + i delta) D_b(1 - rho - i delta)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairSpec {
    pub a: SeqDescriptor,
    pub b: SeqDescriptor,
    pub log_power: u32,
}

impl PairSpec {
    pub fn new(a: SeqDescriptor, b: SeqDescriptor, log_power: u32) -> Self {
        Self { a, b, log_power }
    }
}

fn check_sieve(sieve: &SieveTable, t: f64) -> Result<(), ExperimentError> {
    let need = DirichletBasis::length(t) as u64;
    if need > sieve.bound() {
        return Err(crate::divisor::DivisorError::OutOfRange { needed: need, bound: sieve.bound() }.into());
    }
    Ok(())
}

/// Weighted pair sums at every prefix in `ends`, one pass over the zeros.
fn pair_sums(
    sieve: &SieveTable,
    zeros: &ZeroTable,
    ends: &[usize],
    delta: f64,
    specs: &[PairSpec],
) -> Vec<Vec<Complex64>> {
    let mut seqs: Vec<SeqDescriptor> = Vec::new();
    let mut index = |s: &SeqDescriptor| match seqs.iter().position(|x| x == s) {
        Some(i) => i,
        None => {
            seqs.push(s.clone());
            seqs.len() - 1
        }
    };
    let pairs: Vec<(usize, usize, i32)> =
        specs.iter().map(|p| (index(&p.a), index(&p.b), p.log_power as i32)).collect();
    let values: Vec<Vec<f64>> = seqs.iter().map(|s| sieve.sequence(s).values).collect();
    let basis = DirichletBasis::new(sieve);
    let ords = zeros.ordinates();
    reduce_prefixes(ends, pairs.len(), |idx, acc| {
        let mut cursor = basis.cursor();
        let mut d = vec![Complex64::new(0.0, 0.0); values.len()];
        for &i in idx {
            let g = ords[i];
            let ph = cursor.advance(g, delta);
            for (slot, v) in d.iter_mut().zip(&values) {
                *slot = dot(v, ph);
            }
            let l = big_l(g);
            for (a, &(ia, ib, n)) in acc.iter_mut().zip(&pairs) {
                a.add(d[ia] * d[ib].conj() * l.powi(n));
            }
        }
    })
}

/// `I_N(a,b;T,delta)`.
pub fn dirichlet_pair_sum(
    a: &SeqDescriptor,
    b: &SeqDescriptor,
    zeros: &ZeroTable,
    sieve: &SieveTable,
    t: f64,
    delta: f64,
    log_power: u32,
) -> Result<Complex64, ExperimentError> {
    check_grid(&[t], zeros.max_ordinate())?;
    check_sieve(sieve, t)?;
    let ends = ends_for(zeros, &[t]);
    let spec = PairSpec::new(a.clone(), b.clone(), log_power);
    Ok(pair_sums(sieve, zeros, &ends, delta, &[spec])[0][0])
}

/// Shift of the zero ordinates in a mean value.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Shift {
    /// The same `delta` at every height.
    Delta(f64),
    /// `delta = lambda / log(T/2pi)`, re-derived at each height.
    Lambda(f64),
}

impl Shift {
    fn at(&self, t: f64) -> f64 {
        match *self {
            Shift::Delta(d) => d,
            Shift::Lambda(l) => l / big_l(t),
        }
    }
}

/// Pair sums at each height of the grid, one pass for a fixed `delta` or
/// one pass per height when `delta` scales with `T`.
fn pair_sums_on_grid(
    sieve: &SieveTable,
    zeros: &ZeroTable,
    t_grid: &[f64],
    shift: Shift,
    specs: &[PairSpec],
) -> Vec<Vec<Complex64>> {
    let ends = ends_for(zeros, t_grid);
    match shift {
        Shift::Delta(d) => pair_sums(sieve, zeros, &ends, d, specs),
        Shift::Lambda(_) => t_grid
            .iter()
            .zip(&ends)
            .map(|(&t, &n)| pair_sums(sieve, zeros, &[n], shift.at(t), specs).remove(0))
            .collect(),
    }
}

/// Empirical `I(a,b;T,delta)` against the fully computed main term
/// `(T/2pi)(L T_{a,b}(T/2pi) - M(a,b;T/2pi,delta) - M(b,a;T/2pi,-delta))`.
///
/// `ratio` is the relative deviation `|I - main| / |main|`.
pub fn check_bunny(
    a: &SeqDescriptor,
    b: &SeqDescriptor,
    zeros: &ZeroTable,
    sieve: &SieveTable,
    t_grid: &[f64],
    shift: Shift,
) -> Result<ExperimentResult, ExperimentError> {
    check_grid(t_grid, zeros.max_ordinate())?;
    check_sieve(sieve, *t_grid.last().unwrap())?;
    let sums = pair_sums_on_grid(sieve, zeros, t_grid, shift, &[PairSpec::new(a.clone(), b.clone(), 0)]);
    let (va, vb) = (sieve.sequence(a), sieve.sequence(b));
    let mut result = ExperimentResult::new(
        "check_bunny",
        &[("a", a.to_string()), ("b", b.to_string()), ("shift", format!("{shift:?}")), ("T_grid", fmt_grid(t_grid))],
    );
    let ends = ends_for(zeros, t_grid);
    for ((&t, &n), s) in t_grid.iter().zip(&ends).zip(sums) {
        let x = t / (2.0 * PI);
        let delta = shift.at(t);
        let main = if x >= 1.0 {
            let diag = sum_t(&va, &vb, x)?;
            let m_ab = sum_m(sieve, &va, &vb, x, delta)?;
            let m_ba = sum_m(sieve, &vb, &va, x, -delta)?;
            (Complex64::new(x.ln() * diag, 0.0) - m_ab - m_ba) * x
        } else {
            Complex64::new(0.0, 0.0)
        };
        let emp = s[0];
        let deviation = if main.norm() > 0.0 { (emp - main).norm() / main.norm() } else { emp.norm() };
        let mut p = point(t, n, emp, main, deviation);
        p.extra.insert("delta".into(), delta);
        result.points.push(p);
    }
    Ok(result)
}

/// `S_alpha` and `S_beta` with their predictions.
#[derive(Clone, Debug, PartialEq)]
pub struct Corollary1Empirical {
    pub s_alpha: ExperimentResult,
    /// Extras: `route_relative` (disagreement of the two assemblies) and
    /// `beta_over_alpha`.
    pub s_beta: ExperimentResult,
}

/// `S_alpha = sum |D_alpha(rho)|^2` and `S_beta = sum |D_beta_gamma(rho)|^2`,
/// the latter both from per-zero coefficients
/// `beta_gamma(n) = l^2 d(n) - 2 l d^(1)(n) + alpha(n)` and from
/// `I_4(d,d) + 4 I_2(d1,d1) + I(alpha,alpha) - 4 Re I_3(d,d1) + 2 Re I_2(d,alpha) - 4 Re I_1(d1,alpha)`.
/// The two must agree to [`ROUTE_TOLERANCE`].
pub fn corollary1_empirical(
    zeros: &ZeroTable,
    sieve: &SieveTable,
    t_grid: &[f64],
) -> Result<Corollary1Empirical, ExperimentError> {
    check_grid(t_grid, zeros.max_ordinate())?;
    check_sieve(sieve, *t_grid.last().unwrap())?;
    let consts = corollary1_coefficients()?;
    let (pa, pb) = (to_f64(&consts.s_alpha) * A2, to_f64(&consts.s_beta) * A2);
    let ends = ends_for(zeros, t_grid);
    let d: Vec<f64> = sieve.d().iter().map(|&v| v as f64).collect();
    let (d1, alpha) = (sieve.d1(), sieve.alpha());
    let basis = DirichletBasis::new(sieve);
    let ords = zeros.ordinates();
    // accumulators: S_alpha, S_beta direct, I4(d,d), I2(d1,d1), I3(d,d1), I2(d,alpha), I1(d1,alpha)
    let sums = reduce_prefixes(&ends, 7, |idx, acc| {
        let mut cursor = basis.cursor();
        for &i in idx {
            let g = ords[i];
            let ph = cursor.advance(g, 0.0);
            let l = big_l(g);
            let (dd, dd1, da) = (dot(&d, ph), dot(d1, ph), dot(alpha, ph));
            let mut db = ComplexSum::new();
            for n in 1..ph.len() {
                db.add(ph[n] * (l * l * d[n] - 2.0 * l * d1[n] + alpha[n]));
            }
            let db = db.sum();
            acc[0].add(da * da.conj());
            acc[1].add(db * db.conj());
            acc[2].add(dd * dd.conj() * l.powi(4));
            acc[3].add(dd1 * dd1.conj() * (l * l));
            acc[4].add(dd * dd1.conj() * l.powi(3));
            acc[5].add(dd * da.conj() * (l * l));
            acc[6].add(dd1 * da.conj() * l);
        }
    });
    let params = [("T_grid", fmt_grid(t_grid))];
    let mut s_alpha = ExperimentResult::new("corollary1_s_alpha", &params);
    let mut s_beta = ExperimentResult::new("corollary1_s_beta", &params);
    for ((&t, &n), s) in t_grid.iter().zip(&ends).zip(sums) {
        let route1 = s[1].re;
        let route2 = s[2].re + 4.0 * s[3].re + s[0].re - 4.0 * s[4].re + 2.0 * s[5].re - 4.0 * s[6].re;
        let relative = rel_diff(route1, route2);
        if relative > ROUTE_TOLERANCE {
            return Err(ExperimentError::Inconsistent {
                what: format!("S_beta at T = {t}"),
                left: route1,
                right: route2,
                relative,
            });
        }
        let scale = if t > 2.0 * PI { t / (2.0 * PI) * big_l(t).powi(9) } else { 0.0 };
        let (pred_a, pred_b) = (pa * scale, pb * scale);
        let ratio = |e: f64, p: f64| if p > 0.0 { e / p } else { 0.0 };
        s_alpha.points.push(point(t, n, s[0], Complex64::new(pred_a, 0.0), ratio(s[0].re, pred_a)));
        let mut p = point(t, n, Complex64::new(route1, s[1].im), Complex64::new(pred_b, 0.0), ratio(route1, pred_b));
        p.extra.insert("route_relative".into(), relative);
        p.extra.insert("route2".into(), route2);
        p.extra.insert("beta_over_alpha".into(), if s[0].re > 0.0 { route1 / s[0].re } else { 0.0 });
        s_beta.points.push(p);
    }
    Ok(Corollary1Empirical { s_alpha, s_beta })
}

/// `1/5! - 4 sum_{j>=1} (-1)^j lambda^2j/(5+2j)!` for a real `lambda`,
/// evaluated exactly (a double is a dyadic rational) and rounded once.
pub fn theorem2_coefficient_f64(lambda: f64) -> f64 {
    let r = Rational::from_float(lambda).expect("finite lambda");
    to_f64(&theorem2_coefficient(&r, 40))
}

/// `I(d,d;T,lambda/L)` against `(3/pi^3) c(lambda) T L^5`; `ratio` is their
/// quotient.
pub fn theorem2_empirical(
    lambda: f64,
    zeros: &ZeroTable,
    sieve: &SieveTable,
    t_grid: &[f64],
) -> Result<ExperimentResult, ExperimentError> {
    if !(lambda.abs() <= 4.0) {
        return Err(ExperimentError::InvalidArgument(format!("|lambda| must be at most 4, got {lambda}")));
    }
    check_grid(t_grid, zeros.max_ordinate())?;
    check_sieve(sieve, *t_grid.last().unwrap())?;
    let d = SeqDescriptor::d();
    let shift = Shift::Lambda(lambda);
    let sums = pair_sums_on_grid(sieve, zeros, t_grid, shift, &[PairSpec::new(d.clone(), d, 0)]);
    let coeff = theorem2_coefficient_f64(lambda);
    let mut result = ExperimentResult::new("theorem2", &[("lambda", lambda.to_string()), ("T_grid", fmt_grid(t_grid))]);
    let ends = ends_for(zeros, t_grid);
    for ((&t, &n), s) in t_grid.iter().zip(&ends).zip(sums) {
        let predicted = if t > 2.0 * PI { 3.0 / PI.powi(3) * coeff * t * big_l(t).powi(5) } else { 0.0 };
        let ratio = if predicted != 0.0 { s[0].re / predicted } else { 0.0 };
        let mut p = point(t, n, s[0], Complex64::new(predicted, 0.0), ratio);
        p.extra.insert("delta".into(), shift.at(t));
        p.extra.insert("coefficient".into(), coeff);
        result.points.push(p);
    }
    Ok(result)
}

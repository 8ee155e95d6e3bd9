//! Compensated floating-point accumulation.
//!
//! Neumaier's variant of Kahan summation: the running compensation also
//! captures the low bits of the accumulator when a summand dominates it, so
//! the error is `O(eps) * sum |x_i|` independent of the number of terms.

use std::ops::AddAssign;

use num_complex::Complex64;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct NeumaierSum {
    sum: f64,
    comp: f64,
}

impl NeumaierSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    /// Folds another partial sum in, keeping both compensations.
    pub fn merge(&mut self, other: &NeumaierSum) {
        self.add(other.sum);
        self.add(other.comp);
    }

    pub fn sum(&self) -> f64 {
        self.sum + self.comp
    }
}

impl AddAssign<f64> for NeumaierSum {
    fn add_assign(&mut self, x: f64) {
        self.add(x);
    }
}

impl FromIterator<f64> for NeumaierSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = Self::new();
        iter.into_iter().for_each(|x| s.add(x));
        s
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ComplexSum {
    re: NeumaierSum,
    im: NeumaierSum,
}

impl ComplexSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    pub fn merge(&mut self, other: &ComplexSum) {
        self.re.merge(&other.re);
        self.im.merge(&other.im);
    }

    pub fn sum(&self) -> Complex64 {
        Complex64::new(self.re.sum(), self.im.sum())
    }
}

impl AddAssign<Complex64> for ComplexSum {
    fn add_assign(&mut self, z: Complex64) {
        self.add(z);
    }
}

/// `|a - b| / max(|a|, |b|)`, zero when both vanish.
pub fn rel_diff(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_cancelled_bits() {
        let s: NeumaierSum = [1.0, 1e100, 1.0, -1e100].into_iter().collect();
        assert_eq!(s.sum(), 2.0);
    }

    #[test]
    fn harmonic_sum_matches_reference() {
        let s: NeumaierSum = (1..=1_000_000).map(|n| 1.0 / n as f64).collect();
        // H_n = ln n + gamma + 1/2n - 1/12n^2 + ...
        let n = 1e6f64;
        let h = n.ln() + 0.577_215_664_901_532_9 + 0.5 / n - 1.0 / (12.0 * n * n);
        assert!((s.sum() - h).abs() < 1e-13);
    }

    #[test]
    fn merge_equals_sequential_within_rounding() {
        let xs: Vec<f64> = (1..5000).map(|k| ((k as f64) * 0.37).sin() / k as f64).collect();
        let all: NeumaierSum = xs.iter().copied().collect();
        let mut merged = NeumaierSum::new();
        for chunk in xs.chunks(128) {
            merged.merge(&chunk.iter().copied().collect());
        }
        assert!((all.sum() - merged.sum()).abs() < 1e-15);
    }
}

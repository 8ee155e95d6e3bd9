//! Plain-text tables of zero ordinates.
//!
//! Format: one decimal ordinate per line, ascending; blank lines and lines
//! starting with `#` are ignored. Every prefix is checked against the
//! Riemann-von Mangoldt estimate
//! `N(T) ~ (T/2pi) log(T/2pi) - T/2pi + 7/8`, counting the `k`-th zero as
//! `k - 1/2` at its own height.

use std::path::Path;

use num_complex::Complex64;
use thiserror::Error;

use super::{EvalConfig, ZetaEngine};

/// Zeros per window of the mean-deviation check.
pub const WINDOW: usize = 1000;
/// Allowed mean of `k - 1/2 - N_RvM(gamma_k)` over a window.
pub const WINDOW_MEAN_BAND: f64 = 0.25;
/// Number of leading ordinates checked by evaluating `zeta`.
const SPOT_CHECKS: usize = 10;
const SPOT_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ZeroTableError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: truncated ordinate `{text}`")]
    Truncated { line: usize, text: String },
    #[error("no ordinates found")]
    Empty,
    #[error(
        "zero #{index} at {ordinate}: count {count} deviates from the Riemann-von Mangoldt estimate {estimate:.4} by more than {tolerance:.4}"
    )]
    CountBand { index: usize, ordinate: f64, count: f64, estimate: f64, tolerance: f64 },
    #[error("zeros #{first}..#{last}: mean count deviation {mean:.4} outside +-{band}")]
    WindowMean { first: usize, last: usize, mean: f64, band: f64 },
    #[error("zero #{index} at {ordinate}: |zeta(1/2 + i gamma)| = {modulus:e}")]
    SpotCheck { index: usize, ordinate: f64, modulus: f64 },
}

impl ZeroTableError {
    /// Whether the file content itself is unreadable, as opposed to
    /// parseable data that fails a consistency check.
    pub fn is_format_error(&self) -> bool {
        matches!(self, Self::Io { .. } | Self::Parse { .. } | Self::Truncated { .. } | Self::Empty)
    }
}

/// `(T/2pi) log(T/2pi) - T/2pi + 7/8`.
pub fn rvm_estimate(t: f64) -> f64 {
    let x = t / (2.0 * std::f64::consts::PI);
    x * x.ln() - x + 0.875
}

/// Pointwise band for `|k - 1/2 - N_RvM(gamma_k)|`.
pub fn rvm_tolerance(t: f64) -> f64 {
    1.0 + 0.05 * t.ln()
}

#[derive(Clone, Debug, PartialEq)]
pub struct ZeroTable {
    ordinates: Vec<f64>,
    source: String,
    /// Fractional digits per ordinate (the minimum over the file).
    precision: u32,
    max_count_deviation: f64,
}

impl ZeroTable {
    /// Validates ordinates already in memory (no `zeta` spot check).
    pub fn from_ordinates(
        ordinates: Vec<f64>,
        source: impl Into<String>,
        precision: u32,
    ) -> Result<Self, ZeroTableError> {
        if ordinates.is_empty() {
            return Err(ZeroTableError::Empty);
        }
        for (i, w) in ordinates.windows(2).enumerate() {
            if !(w[1] > w[0]) {
                return Err(ZeroTableError::Parse {
                    line: i + 2,
                    message: format!("ordinate {} does not exceed its predecessor {}", w[1], w[0]),
                });
            }
        }
        let mut max_dev = 0.0f64;
        let mut devs = Vec::with_capacity(ordinates.len());
        for (i, &g) in ordinates.iter().enumerate() {
            let count = i as f64 + 0.5;
            let estimate = rvm_estimate(g);
            let dev = count - estimate;
            let tolerance = rvm_tolerance(g);
            if !(g > 0.0) || dev.abs() > tolerance {
                return Err(ZeroTableError::CountBand { index: i + 1, ordinate: g, count, estimate, tolerance });
            }
            max_dev = max_dev.max(dev.abs());
            devs.push(dev);
        }
        let n_chunks = devs.len().div_ceil(WINDOW);
        for (c, chunk) in devs.chunks(WINDOW).enumerate() {
            let checked = chunk.len() == WINDOW || n_chunks == 1 || chunk.len() >= WINDOW / 10;
            let mean = chunk.iter().sum::<f64>() / chunk.len() as f64;
            if checked && mean.abs() > WINDOW_MEAN_BAND {
                return Err(ZeroTableError::WindowMean {
                    first: c * WINDOW + 1,
                    last: c * WINDOW + chunk.len(),
                    mean,
                    band: WINDOW_MEAN_BAND,
                });
            }
        }
        Ok(Self { ordinates, source: source.into(), precision, max_count_deviation: max_dev })
    }

    pub fn ordinates(&self) -> &[f64] {
        &self.ordinates
    }

    pub fn len(&self) -> usize {
        self.ordinates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ordinates.is_empty()
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn max_ordinate(&self) -> f64 {
        *self.ordinates.last().expect("validated tables are non-empty")
    }

    /// Largest `|k - 1/2 - N_RvM(gamma_k)|` over the table.
    pub fn max_count_deviation(&self) -> f64 {
        self.max_count_deviation
    }

    /// `N(T)`: ordinates `0 < gamma <= T`.
    pub fn count_up_to(&self, t: f64) -> usize {
        self.ordinates.partition_point(|&g| g <= t)
    }

    pub fn up_to(&self, t: f64) -> &[f64] {
        &self.ordinates[..self.count_up_to(t)]
    }

    /// The first `n` ordinates as a table of their own.
    pub fn truncated(&self, n: usize) -> ZeroTable {
        let ordinates: Vec<f64> = self.ordinates[..n.min(self.len())].to_vec();
        let max_count_deviation =
            ordinates.iter().enumerate().map(|(i, &g)| (i as f64 + 0.5 - rvm_estimate(g)).abs()).fold(0.0, f64::max);
        ZeroTable { ordinates, source: self.source.clone(), precision: self.precision, max_count_deviation }
    }

    /// Checks `|zeta(1/2 + i gamma)| <= 1e-6` for the first `count` ordinates.
    pub fn spot_check(&self, engine: &ZetaEngine, count: usize) -> Result<(), ZeroTableError> {
        for (i, &g) in self.ordinates.iter().take(count).enumerate() {
            let modulus = engine.zeta(Complex64::new(0.5, g)).map(|z| z.norm()).unwrap_or(f64::INFINITY);
            if !(modulus <= SPOT_TOLERANCE) {
                return Err(ZeroTableError::SpotCheck { index: i + 1, ordinate: g, modulus });
            }
        }
        Ok(())
    }
}

fn fractional_digits(token: &str) -> u32 {
    token.split_once('.').map_or(0, |(_, frac)| frac.chars().take_while(|c| c.is_ascii_digit()).count() as u32)
}

/// Parses and validates a table held in memory, including the spot check.
pub fn parse_zeros(text: &str, source: &str) -> Result<ZeroTable, ZeroTableError> {
    let mut ordinates = Vec::new();
    let mut digits = Vec::new();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let value: f64 = line
            .parse()
            .map_err(|_| ZeroTableError::Parse { line: i + 1, message: format!("`{line}` is not a decimal number") })?;
        if !value.is_finite() {
            return Err(ZeroTableError::Parse { line: i + 1, message: format!("`{line}` is not finite") });
        }
        if let Some(&prev) = ordinates.last() {
            if !(value > prev) {
                return Err(ZeroTableError::Parse {
                    line: i + 1,
                    message: format!("ordinate {value} does not exceed its predecessor {prev}"),
                });
            }
        }
        ordinates.push(value);
        digits.push(fractional_digits(line));
        last_line = i + 1;
    }
    // A final line without its newline and with fewer digits than the rest
    // of the table was cut off mid-write.
    if !text.ends_with('\n') && digits.len() >= 2 {
        let last = digits[digits.len() - 1];
        let typical = digits[..digits.len() - 1].iter().copied().min().unwrap_or(last);
        if last < typical {
            let text = text.lines().nth(last_line - 1).unwrap_or_default().trim().to_string();
            return Err(ZeroTableError::Truncated { line: last_line, text });
        }
    }
    let precision = digits.iter().copied().min().unwrap_or(0);
    let table = ZeroTable::from_ordinates(ordinates, source, precision)?;
    let engine = ZetaEngine::new(EvalConfig::default()).expect("default configuration is valid");
    table.spot_check(&engine, SPOT_CHECKS)?;
    Ok(table)
}

pub fn load_zeros(path: impl AsRef<Path>) -> Result<ZeroTable, ZeroTableError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| ZeroTableError::Io { path: path.display().to_string(), message: e.to_string() })?;
    parse_zeros(&text, &path.display().to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIRST: &str = "# test\n14.134725142\n21.022039639\n25.010857580\n";

    #[test]
    fn three_zeros() {
        let t = parse_zeros(FIRST, "mem").unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(t.precision(), 9);
        assert_eq!(t.count_up_to(15.0), 1);
        let est = rvm_estimate(15.0);
        assert!((est - 0.565).abs() < 1e-3, "{est}");
        assert!((1.0 - est).abs() < rvm_tolerance(15.0));
    }

    #[test]
    fn empty_and_comment_only() {
        assert_eq!(parse_zeros("", "mem").unwrap_err(), ZeroTableError::Empty);
        assert_eq!(parse_zeros("# nothing\n\n", "mem").unwrap_err(), ZeroTableError::Empty);
    }

    #[test]
    fn inversion_reports_line() {
        let text = "14.134725142\n25.010857580\n21.022039639\n";
        match parse_zeros(text, "mem").unwrap_err() {
            ZeroTableError::Parse { line, .. } => assert_eq!(line, 3),
            e => panic!("{e}"),
        }
        match parse_zeros("14.134725142\nabc\n", "mem").unwrap_err() {
            ZeroTableError::Parse { line, .. } => assert_eq!(line, 2),
            e => panic!("{e}"),
        }
    }

    #[test]
    fn truncated_last_line() {
        let text = "14.134725142\n21.022039639\n25.0108";
        assert_eq!(
            parse_zeros(text, "mem").unwrap_err(),
            ZeroTableError::Truncated { line: 3, text: "25.0108".into() }
        );
    }

    #[test]
    fn missing_zero_breaks_band() {
        // dropping the first zero shifts every count by one
        let text = "21.022039639\n25.010857580\n";
        assert!(matches!(parse_zeros(text, "mem").unwrap_err(), ZeroTableError::WindowMean { first: 1, last: 2, .. }));
        let far = ZeroTable::from_ordinates(vec![14.134725142, 21.022039639, 40.0], "mem", 9).unwrap_err();
        assert!(matches!(far, ZeroTableError::CountBand { index: 3, .. }));
    }

    #[test]
    fn off_zero_fails_spot_check() {
        let text = "14.134725142\n21.022039639\n25.0109\n";
        assert!(matches!(parse_zeros(text, "mem").unwrap_err(), ZeroTableError::SpotCheck { index: 3, .. }));
    }
}

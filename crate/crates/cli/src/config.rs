//! Run configuration and calibration bands, both TOML.
//!
//! ```toml
//! zeros_path = "zeros_100k.txt"     # relative to this file
//! sieve_bound = 12000               # at least max(t_grid) / 2pi
//! t_grid = [2000.0, 10000.0, 50000.0]
//! lambda_grid = [0.0, 1.0]
//! output_dir = "out"
//! format = "json"                   # or "csv"
//! calibration = "calibration.toml"  # optional
//! landau_x = [2.0, 3.0, 5.0, 6.0]   # optional
//! experiments = ["landau", "moments", "bunny", "corollary1", "theorem2"]  # optional
//!
//! [fetch]                           # optional
//! url = "https://example.org/zeros.txt"
//! expected_lines = 100000
//! ```

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::error::CliError;

#[derive(Clone, Copy, Debug, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, Deserialize, PartialEq, Eq, PartialOrd, Ord)]
#[serde(rename_all = "lowercase")]
pub enum Experiment {
    Landau,
    Moments,
    Bunny,
    Corollary1,
    Theorem2,
}

impl Experiment {
    pub const ALL: [Experiment; 5] =
        [Experiment::Landau, Experiment::Moments, Experiment::Bunny, Experiment::Corollary1, Experiment::Theorem2];
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct FetchConfig {
    pub url: String,
    pub expected_lines: usize,
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub zeros_path: PathBuf,
    pub sieve_bound: u64,
    pub t_grid: Vec<f64>,
    #[serde(default)]
    pub lambda_grid: Vec<f64>,
    pub output_dir: PathBuf,
    pub format: Format,
    pub calibration: Option<PathBuf>,
    #[serde(default = "default_landau_x")]
    pub landau_x: Vec<f64>,
    #[serde(default = "default_experiments")]
    pub experiments: Vec<Experiment>,
    pub fetch: Option<FetchConfig>,
}

fn default_landau_x() -> Vec<f64> {
    vec![2.0, 3.0, 5.0, 6.0]
}

fn default_experiments() -> Vec<Experiment> {
    Experiment::ALL.to_vec()
}

impl RunConfig {
    /// Reads and checks a config; relative paths are resolved against the
    /// config file's directory.
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        let mut cfg: RunConfig =
            toml::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        let base = path.parent().unwrap_or(Path::new("."));
        cfg.zeros_path = base.join(&cfg.zeros_path);
        cfg.output_dir = base.join(&cfg.output_dir);
        cfg.calibration = cfg.calibration.map(|c| base.join(c));
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.t_grid.is_empty() {
            return Err(CliError::Usage("t_grid is empty".into()));
        }
        if !self.t_grid.windows(2).all(|w| w[0] < w[1]) || self.t_grid.iter().any(|t| !t.is_finite() || *t <= 0.0) {
            return Err(CliError::Usage("t_grid must be positive and strictly increasing".into()));
        }
        let top = self.t_grid[self.t_grid.len() - 1];
        if (self.sieve_bound as f64) < top / (2.0 * std::f64::consts::PI) {
            return Err(CliError::Usage(format!("sieve_bound {} is below max(t_grid)/2pi", self.sieve_bound)));
        }
        if self.experiments.is_empty() {
            return Err(CliError::Usage("no experiments selected".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, Deserialize, PartialEq)]
pub struct Band(pub f64, pub f64);

impl Band {
    pub fn contains(&self, v: f64) -> bool {
        self.0 <= v && v <= self.1
    }
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
pub struct LandauBands {
    pub ratio: Band,
    pub non_prime_power_factor: f64,
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
pub struct RatioBand {
    pub ratio: Band,
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
pub struct MomentK2Bands {
    pub band_low_divisor: f64,
    pub band_high_factor: f64,
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
pub struct Corollary1Bands {
    pub s_alpha_ratio: Band,
    pub s_beta_ratio: Band,
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
pub struct BunnyBands {
    pub max_deviation: f64,
}

/// Pilot-calibrated containment bands.
#[derive(Clone, Debug, Deserialize, PartialEq)]
pub struct Calibration {
    pub landau: LandauBands,
    pub moment_k1: RatioBand,
    pub moment_k2: MomentK2Bands,
    pub corollary1: Corollary1Bands,
    pub theorem2: RatioBand,
    pub bunny: BunnyBands,
}

/// The checked-in calibration file.
pub const BUILTIN_CALIBRATION: &str = include_str!("../../../data/calibration.toml");

impl Calibration {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Usage(format!("calibration: {e}")))
    }

    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        match path {
            Some(p) => Self::parse(&std::fs::read_to_string(p).map_err(|e| CliError::io(p, e))?),
            None => Self::parse(BUILTIN_CALIBRATION),
        }
    }
}

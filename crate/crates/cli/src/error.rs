use std::process::ExitCode;

use thiserror::Error;
use zmoments::experiments::ExperimentError;
use zmoments::zeta::ZeroTableError;

pub const EXIT_MISMATCH: u8 = 1;
pub const EXIT_DATA: u8 = 2;
pub const EXIT_USAGE: u8 = 64;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{0}")]
    Mismatch(String),
    #[error("data error: {0}")]
    Data(String),
    #[error("zero table: {0}")]
    Zeros(#[from] ZeroTableError),
    #[error("i/o error on {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Experiment(#[from] ExperimentError),
}

impl CliError {
    pub fn io(path: impl AsRef<std::path::Path>, source: std::io::Error) -> Self {
        CliError::Io { path: path.as_ref().display().to_string(), source }
    }

    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Mismatch(_) => EXIT_MISMATCH,
            CliError::Zeros(e) if !e.is_format_error() => EXIT_MISMATCH,
            CliError::Experiment(ExperimentError::Inconsistent { .. }) => EXIT_MISMATCH,
            CliError::Experiment(ExperimentError::BeyondTable { .. } | ExperimentError::InvalidArgument(_)) => {
                EXIT_USAGE
            }
            _ => EXIT_DATA,
        })
    }
}

//! `zmoments`: exact-constant verification, zero-table tools and zero-sum
//! experiments.
//!
//! Exit codes: 0 pass, 1 mismatch or failed verdict, 2 data error, 64 usage.

mod config;
mod error;
mod fetch;
mod report;
mod run;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_complex::Complex64;
use zmoments::zeta::{load_zeros, EvalConfig, ZetaEngine};

use crate::config::RunConfig;
use crate::error::{CliError, EXIT_USAGE};

/// Zeros checked against `|zeta| <= 1e-6` by `zeros validate`.
const SPOT_CHECK_COUNT: usize = 10;

#[derive(Parser)]
#[command(name = "zmoments", version, about = "Moments of the zeta derivative at the zeros: constants and experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Recompute every published constant and compare exactly.
    VerifyExact {
        #[arg(long)]
        json: bool,
        /// Perturb the first check whose label starts with this text.
        #[arg(long, hide = true)]
        fault: Option<String>,
    },
    /// Run the zero-sum experiments described by a TOML config.
    Experiments {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Zero-table utilities.
    Zeros {
        #[command(subcommand)]
        command: ZerosCommand,
    },
}

#[derive(Subcommand)]
enum ZerosCommand {
    /// Parse a table and check counts and values.
    Validate { path: PathBuf },
    /// Download a table and check its size and counts.
    Fetch {
        #[arg(long)]
        url: String,
        #[arg(long)]
        expect_lines: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn verify_exact(json: bool, fault: Option<&str>) -> Result<(), CliError> {
    match verify::run(json, fault) {
        Ok(out) => {
            print!("{out}");
            Ok(())
        }
        Err((out, e)) => {
            print!("{out}");
            Err(e)
        }
    }
}

fn experiments(config: &std::path::Path, workers: Option<usize>) -> Result<(), CliError> {
    if workers == Some(0) {
        return Err(CliError::Usage("--workers must be positive".into()));
    }
    let cfg = RunConfig::load(config)?;
    let outcome = run::run(&cfg, workers)?;
    for v in &outcome.verdicts {
        println!("{} {}: {} [{}]", if v.pass { "pass" } else { "FAIL" }, v.experiment, v.criterion, v.detail);
    }
    let failed = outcome.failures();
    if failed.is_empty() {
        Ok(())
    } else {
        let ids: Vec<String> = failed.iter().map(|v| format!("{} ({})", v.experiment, v.criterion)).collect();
        Err(CliError::Mismatch(format!("failed: {}", ids.join(", "))))
    }
}

fn zeros_validate(path: &std::path::Path) -> Result<(), CliError> {
    let table = load_zeros(path)?;
    println!("count {}", table.len());
    println!("height {}", table.max_ordinate());
    println!("max count deviation {:.4}", table.max_count_deviation());
    println!("count band: pass");
    let engine = ZetaEngine::new(EvalConfig::default()).map_err(|e| CliError::Data(e.to_string()))?;
    table.spot_check(&engine, SPOT_CHECK_COUNT)?;
    let worst = table.ordinates()[..SPOT_CHECK_COUNT.min(table.len())]
        .iter()
        .map(|&g| engine.zeta(Complex64::new(0.5, g)).map(|z| z.norm()).unwrap_or(f64::INFINITY))
        .fold(0.0, f64::max);
    println!("spot check: pass (max |zeta| {worst:.2e})");
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    let result = match &cli.command {
        Command::VerifyExact { json, fault } => verify_exact(*json, fault.as_deref()),
        Command::Experiments { config, workers } => experiments(config, *workers),
        Command::Zeros { command: ZerosCommand::Validate { path } } => zeros_validate(path),
        Command::Zeros { command: ZerosCommand::Fetch { url, expect_lines, output } } => {
            fetch::fetch(url, *expect_lines, output.as_deref()).map(|t| {
                println!("fetched {} ordinates up to {}", t.len(), t.max_ordinate());
            })
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

//! Report records. Every numeric value carries a provenance tag; CSV output
//! is one record per line.

use std::io::Write;
use std::path::Path;

use serde::Serialize;
use zmoments::experiments::ExperimentResult;

use crate::config::Format;
use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    ExactRational,
    Empirical,
    CalibratedBand,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Record {
    pub experiment: String,
    /// `key=value` pairs joined by `;`.
    pub parameters: String,
    pub t: f64,
    pub zeros: usize,
    pub quantity: String,
    pub value: f64,
    pub provenance: Provenance,
}

/// Extras that are exact constants rendered to `f64` rather than measurements.
const EXACT_EXTRAS: [&str; 4] = ["rmt_constant", "theorem1_low", "theorem1_high", "coefficient"];

fn joined(result: &ExperimentResult) -> String {
    result.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(";")
}

/// Flattens a result into records. `extra` is appended per point, e.g.
/// calibration bands.
pub fn records(result: &ExperimentResult) -> Vec<Record> {
    let params = joined(result);
    let mut out = Vec::new();
    for p in &result.points {
        let mut push = |quantity: &str, value: f64, provenance| {
            out.push(Record {
                experiment: result.experiment.clone(),
                parameters: params.clone(),
                t: p.t,
                zeros: p.zeros,
                quantity: quantity.to_string(),
                value,
                provenance,
            })
        };
        push("empirical_re", p.empirical.re, Provenance::Empirical);
        push("empirical_im", p.empirical.im, Provenance::Empirical);
        push("predicted_re", p.predicted.re, Provenance::ExactRational);
        push("predicted_im", p.predicted.im, Provenance::ExactRational);
        push("ratio", p.ratio, Provenance::Empirical);
        for (k, v) in &p.extra {
            let prov =
                if EXACT_EXTRAS.contains(&k.as_str()) { Provenance::ExactRational } else { Provenance::Empirical };
            push(k, *v, prov);
        }
    }
    out
}

#[derive(Serialize)]
struct JsonReport<'a> {
    experiment: &'a str,
    assumes_rh: bool,
    records: &'a [Record],
}

pub fn render(experiment: &str, assumes_rh: bool, records: &[Record], format: Format) -> Result<Vec<u8>, CliError> {
    match format {
        Format::Json => {
            let mut buf = serde_json::to_vec_pretty(&JsonReport { experiment, assumes_rh, records })
                .map_err(|e| CliError::Data(e.to_string()))?;
            buf.push(b'\n');
            Ok(buf)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in records {
                w.serialize(r).map_err(|e| CliError::Data(e.to_string()))?;
            }
            w.into_inner().map_err(|e| CliError::Data(e.to_string()))
        }
    }
}

pub fn write_file(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let mut f = std::fs::File::create(path).map_err(|e| CliError::io(path, e))?;
    f.write_all(bytes).map_err(|e| CliError::io(path, e))
}

pub fn extension(format: Format) -> &'static str {
    match format {
        Format::Json => "json",
        Format::Csv => "csv",
    }
}

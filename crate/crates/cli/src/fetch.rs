//! Download of a zero table over HTTP(S).

use std::path::Path;

use zmoments::zeta::{parse_zeros, ZeroTable};

use crate::error::CliError;

/// Largest body accepted, in bytes.
const BODY_LIMIT: u64 = 1 << 30;

/// Fetches `url`, requires exactly `expected_lines` ordinates, validates the
/// table and, if `output` is given, writes the raw text there.
pub fn fetch(url: &str, expected_lines: usize, output: Option<&Path>) -> Result<ZeroTable, CliError> {
    let mut resp = ureq::get(url).call().map_err(|e| CliError::Data(format!("{url}: {e}")))?;
    let text = resp
        .body_mut()
        .with_config()
        .limit(BODY_LIMIT)
        .read_to_string()
        .map_err(|e| CliError::Data(format!("{url}: {e}")))?;
    let table = parse_zeros(&text, url)?;
    if table.len() != expected_lines {
        return Err(CliError::Data(format!("{url}: expected {expected_lines} ordinates, received {}", table.len())));
    }
    if let Some(path) = output {
        let tmp = path.with_extension("part");
        std::fs::write(&tmp, &text).map_err(|e| CliError::io(&tmp, e))?;
        std::fs::rename(&tmp, path).map_err(|e| CliError::io(path, e))?;
    }
    Ok(table)
}

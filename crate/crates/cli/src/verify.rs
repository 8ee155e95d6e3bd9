//! `verify-exact`: every published constant against its recomputation.

use serde::Serialize;
use zmoments::exact::tables::{published_checks, CheckEntry, ExactValue};
use zmoments::exact::Rational;

use crate::error::CliError;

#[derive(Serialize)]
struct RationalJson {
    numerator: String,
    denominator: String,
}

impl From<&Rational> for RationalJson {
    fn from(r: &Rational) -> Self {
        Self { numerator: r.numer().to_string(), denominator: r.denom().to_string() }
    }
}

#[derive(Serialize)]
struct TermJson {
    log_p_power: u32,
    log_t_power: u32,
    coefficient: RationalJson,
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
enum ValueJson {
    Rational { value: RationalJson },
    MainTerm { a2_normalized: bool, terms: Vec<TermJson> },
    Decimal { value: String },
}

impl From<&ExactValue> for ValueJson {
    fn from(v: &ExactValue) -> Self {
        match v {
            ExactValue::Rational(r) => ValueJson::Rational { value: r.into() },
            ExactValue::MainTerm(m) => ValueJson::MainTerm {
                a2_normalized: m.is_a2_normalized(),
                terms: m
                    .terms()
                    .map(|(u, v, c)| TermJson { log_p_power: u, log_t_power: v, coefficient: c.into() })
                    .collect(),
            },
            ExactValue::Decimal(s) => ValueJson::Decimal { value: s.clone() },
        }
    }
}

#[derive(Serialize)]
struct EntryJson {
    label: String,
    expected: ValueJson,
    computed: ValueJson,
    #[serde(rename = "match")]
    matched: bool,
    provenance: &'static str,
}

#[derive(Serialize)]
struct VerifyJson {
    entries: Vec<EntryJson>,
    all_match: bool,
}

/// Published checks, with the first entry whose label starts with `fault`
/// (if any) perturbed.
pub fn checks(fault: Option<&str>) -> Result<Vec<CheckEntry>, CliError> {
    let mut entries = published_checks().map_err(|e| CliError::Data(e.to_string()))?;
    if let Some(label) = fault {
        let e = entries
            .iter_mut()
            .find(|e| e.label.starts_with(label))
            .ok_or_else(|| CliError::Usage(format!("no check labelled `{label}`")))?;
        e.computed = e.computed.perturbed();
    }
    Ok(entries)
}

pub fn render(entries: &[CheckEntry], json: bool) -> String {
    if json {
        let report = VerifyJson {
            entries: entries
                .iter()
                .map(|e| EntryJson {
                    label: e.label.clone(),
                    expected: (&e.expected).into(),
                    computed: (&e.computed).into(),
                    matched: e.matches(),
                    provenance: "exact-rational",
                })
                .collect(),
            all_match: entries.iter().all(CheckEntry::matches),
        };
        let mut s = serde_json::to_string_pretty(&report).expect("serializable");
        s.push('\n');
        return s;
    }
    let width = entries.iter().map(|e| e.label.len()).max().unwrap_or(0);
    let mut s = String::new();
    for e in entries {
        let verdict = if e.matches() { "ok" } else { "MISMATCH" };
        s.push_str(&format!("{verdict:8} {:width$}  expected {}  computed {}\n", e.label, e.expected, e.computed));
    }
    let passed = entries.iter().filter(|e| e.matches()).count();
    s.push_str(&format!("{passed}/{} constants match\n", entries.len()));
    s
}

/// Runs the suite; a mismatch becomes an error naming every offending entry.
pub fn run(json: bool, fault: Option<&str>) -> Result<String, (String, CliError)> {
    let entries = checks(fault).map_err(|e| (String::new(), e))?;
    let out = render(&entries, json);
    let bad: Vec<&str> = entries.iter().filter(|e| !e.matches()).map(|e| e.label.as_str()).collect();
    if bad.is_empty() {
        Ok(out)
    } else {
        Err((out, CliError::Mismatch(format!("mismatch: {}", bad.join(", ")))))
    }
}

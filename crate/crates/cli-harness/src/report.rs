//! Check records, suite reports and their JSON/CSV serializations.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::HarnessError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(HarnessError::Config(format!("unknown format {other:?} (json or csv)"))),
        }
    }
}

/// Non-finite values are written as the strings "NaN", "inf", "-inf" so
/// that JSON output stays parseable.
mod float {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if v.is_finite() {
            s.serialize_f64(*v)
        } else {
            s.serialize_str(&v.to_string())
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Num(f64),
        Text(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Num(v) => Ok(v),
            Repr::Text(t) => t.parse().map_err(serde::de::Error::custom),
        }
    }
}

mod float_pair {
    use serde::ser::SerializeTuple;
    use serde::{Deserialize, Deserializer, Serializer};

    #[derive(serde::Serialize)]
    struct F(#[serde(with = "super::float")] f64);

    #[derive(Deserialize)]
    struct G(#[serde(with = "super::float")] f64);

    pub fn serialize<S: Serializer>(v: &[f64; 2], s: S) -> Result<S::Ok, S::Error> {
        let mut t = s.serialize_tuple(2)?;
        t.serialize_element(&F(v[0]))?;
        t.serialize_element(&F(v[1]))?;
        t.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<[f64; 2], D::Error> {
        let [G(a), G(b)] = <[G; 2]>::deserialize(d)?;
        Ok([a, b])
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub id: String,
    pub inputs: String,
    #[serde(with = "float_pair")]
    pub expected: [f64; 2],
    #[serde(with = "float_pair")]
    pub got: [f64; 2],
    #[serde(with = "float")]
    pub deviation: f64,
    #[serde(with = "float")]
    pub tolerance: f64,
    pub pass: bool,
}

impl CheckRecord {
    /// `pass` is derived: a NaN deviation never passes.
    pub fn new(id: String, inputs: String, expected: Complex64, got: Complex64, deviation: f64, tolerance: f64) -> Self {
        Self {
            id,
            inputs,
            expected: [expected.re, expected.im],
            got: [got.re, got.im],
            deviation,
            tolerance,
            pass: deviation <= tolerance,
        }
    }

    pub fn failed(id: String, inputs: String, tolerance: f64) -> Self {
        let nan = Complex64::new(f64::NAN, f64::NAN);
        Self::new(id, inputs, nan, nan, f64::INFINITY, tolerance)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub pass: bool,
    pub checks: Vec<CheckRecord>,
    #[serde(default)]
    pub warnings: Vec<String>,
    pub config: BTreeMap<String, String>,
}

impl SuiteReport {
    pub fn new(suite: &str, checks: Vec<CheckRecord>, config: BTreeMap<String, String>) -> Self {
        let mut warnings = Vec::new();
        if checks.is_empty() {
            warnings.push("corpus selection left no checks".to_string());
        }
        let pass = checks.iter().all(|c| c.pass);
        Self { suite: suite.to_string(), pass, checks, warnings, config }
    }

    pub fn max_deviation(&self) -> f64 {
        self.checks.iter().map(|c| c.deviation).fold(0.0, |a, d| if d.is_nan() { f64::NAN } else { a.max(d) })
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

pub const CSV_COLUMNS: [&str; 10] =
    ["suite", "id", "inputs", "expected_re", "expected_im", "got_re", "got_im", "deviation", "tolerance", "pass"];

#[derive(Serialize)]
struct CsvRow<'a> {
    suite: &'a str,
    id: &'a str,
    inputs: &'a str,
    expected_re: f64,
    expected_im: f64,
    got_re: f64,
    got_im: f64,
    deviation: f64,
    tolerance: f64,
    pass: bool,
}

pub fn emit_report(report: &SuiteReport, format: Format) -> Result<String, HarnessError> {
    emit_reports(std::slice::from_ref(report), format)
}

/// One JSON array of reports, or one CSV table with a row per check.
pub fn emit_reports(reports: &[SuiteReport], format: Format) -> Result<String, HarnessError> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(reports).map_err(|e| HarnessError::Report(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
            let io = |e: csv::Error| HarnessError::Report(e.to_string());
            w.write_record(CSV_COLUMNS).map_err(io)?;
            for r in reports {
                for c in &r.checks {
                    w.serialize(CsvRow {
                        suite: &r.suite,
                        id: &c.id,
                        inputs: &c.inputs,
                        expected_re: c.expected[0],
                        expected_im: c.expected[1],
                        got_re: c.got[0],
                        got_im: c.got[1],
                        deviation: c.deviation,
                        tolerance: c.tolerance,
                        pass: c.pass,
                    })
                    .map_err(io)?;
                }
            }
            let bytes = w.into_inner().map_err(|e| HarnessError::Report(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| HarnessError::Report(e.to_string()))
        }
    }
}

pub fn parse_reports(json: &str) -> Result<Vec<SuiteReport>, HarnessError> {
    serde_json::from_str(json).map_err(|e| HarnessError::Report(e.to_string()))
}

/// Writes to `path`, or to stdout when no path is given.
pub fn write_output(text: &str, path: Option<&Path>) -> Result<(), HarnessError> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => {
            use std::io::Write;
            std::io::stdout().write_all(text.as_bytes())?;
        }
    }
    Ok(())
}

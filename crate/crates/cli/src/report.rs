//! Experiment reports, run manifests and their on-disk encodings.
//!
//! Everything written here is a pure function of the report contents, so two
//! runs with the same parameters produce byte-identical files. Wall-clock
//! time only appears in the manifest.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Unit {
    Nats,
    Kelvin,
    /// ħ = c = k_B = 1 with G explicit.
    Natural,
    Dimensionless,
    Meter,
    Kilogram,
    #[serde(rename = "m^2")]
    SquareMeter,
    #[serde(rename = "m/s^2")]
    Acceleration,
    #[serde(rename = "m^-2")]
    InverseSquareMeter,
    Degree,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scalar {
    pub name: String,
    pub value: f64,
    pub unit: Unit,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Column {
    pub name: String,
    pub unit: Unit,
}

/// A table of rows; the first column is the abscissa.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Curve {
    pub name: String,
    pub columns: Vec<Column>,
    pub rows: Vec<Vec<f64>>,
}

impl Curve {
    pub fn new(name: &str, columns: &[(&str, Unit)]) -> Self {
        Self {
            name: name.into(),
            columns: columns.iter().map(|&(n, unit)| Column { name: n.into(), unit }).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.columns.len(), "row width for curve {}", self.name);
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let k = self.columns.iter().position(|c| c.name == name)?;
        Some(self.rows.iter().map(|r| r[k]).collect())
    }
}

/// A named pass/fail check. `value` is compared against `tolerance` by the
/// experiment; both are kept for the record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub name: String,
    pub passed: bool,
    pub value: f64,
    pub tolerance: f64,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub subcommand: String,
    pub scalars: Vec<Scalar>,
    pub curves: Vec<Curve>,
    pub verdicts: Vec<Verdict>,
    /// Structured records that do not fit a table (states, transcripts).
    pub records: BTreeMap<String, Value>,
    pub notes: Vec<String>,
}

impl ExperimentReport {
    pub fn new(subcommand: &str) -> Self {
        Self {
            subcommand: subcommand.into(),
            scalars: Vec::new(),
            curves: Vec::new(),
            verdicts: Vec::new(),
            records: BTreeMap::new(),
            notes: Vec::new(),
        }
    }

    pub fn scalar(&mut self, name: &str, value: f64, unit: Unit) {
        self.scalars.push(Scalar { name: name.into(), value, unit });
    }

    pub fn curve(&mut self, curve: Curve) {
        self.curves.push(curve);
    }

    /// Records `value ≤ tolerance` as a verdict.
    pub fn within(&mut self, name: &str, value: f64, tolerance: f64, detail: &str) {
        self.verdicts.push(Verdict {
            name: name.into(),
            passed: value <= tolerance,
            value,
            tolerance,
            detail: detail.into(),
        });
    }

    /// Records a boolean verdict with the quantity that decided it.
    pub fn check(&mut self, name: &str, passed: bool, value: f64, tolerance: f64, detail: &str) {
        self.verdicts.push(Verdict { name: name.into(), passed, value, tolerance, detail: detail.into() });
    }

    pub fn record<S: Serialize>(&mut self, name: &str, value: &S) -> Result<(), CliError> {
        let v = serde_json::to_value(value).map_err(|e| CliError::Output(e.to_string()))?;
        self.records.insert(name.into(), v);
        Ok(())
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed)
    }

    pub fn get_scalar(&self, name: &str) -> Option<f64> {
        self.scalars.iter().find(|s| s.name == name).map(|s| s.value)
    }

    pub fn get_curve(&self, name: &str) -> Option<&Curve> {
        self.curves.iter().find(|c| c.name == name)
    }

    pub fn get_verdict(&self, name: &str) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.name == name)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstantsStamp {
    /// `builtin` or the path given on the command line.
    pub source: String,
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub subcommand: String,
    /// Arguments after the program name, exactly as given.
    pub args: Vec<String>,
    pub params: Value,
    pub seed: u64,
    pub units: String,
    pub format: String,
    pub out_dir: String,
    pub version: String,
    pub constants: ConstantsStamp,
    pub duration_seconds: f64,
    pub outputs: Vec<String>,
    pub passed: bool,
}

/// Shortest round-trip representation; non-finite values are spelled out.
pub fn format_float(x: f64) -> String {
    if x.is_finite() {
        serde_json::Number::from_f64(x).map(|n| n.to_string()).unwrap_or_else(|| x.to_string())
    } else if x.is_nan() {
        "NaN".into()
    } else if x > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

pub fn curve_csv(curve: &Curve) -> Result<Vec<u8>, CliError> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    let io = |e: csv::Error| CliError::Output(e.to_string());
    w.write_record(curve.columns.iter().map(|c| c.name.as_str())).map_err(io)?;
    for row in &curve.rows {
        w.write_record(row.iter().map(|&x| format_float(x))).map_err(io)?;
    }
    w.into_inner().map_err(|e| CliError::Output(e.to_string()))
}

pub fn to_json_bytes<S: Serialize>(value: &S) -> Result<Vec<u8>, CliError> {
    let mut bytes = serde_json::to_vec_pretty(value).map_err(|e| CliError::Output(e.to_string()))?;
    bytes.push(b'\n');
    Ok(bytes)
}

/// Writes the report and/or its curves into `dir` and returns the file names.
pub fn write_report(report: &ExperimentReport, dir: &Path, json: bool, csv: bool) -> Result<Vec<String>, CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let mut written = Vec::new();
    let mut put = |name: String, bytes: Vec<u8>| -> Result<(), CliError> {
        let path = dir.join(&name);
        fs::write(&path, bytes).map_err(|e| CliError::io(&path, e))?;
        written.push(name);
        Ok(())
    };
    let sub = &report.subcommand;
    if json {
        put(format!("{sub}.report.json"), to_json_bytes(report)?)?;
    }
    if csv {
        for c in &report.curves {
            put(format!("{sub}.{}.csv", c.name), curve_csv(c)?)?;
        }
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip() {
        for x in [0.5, 1.0 / 3.0, 6.17e-8, 1e300, -2.0, 0.0] {
            assert_eq!(format_float(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(format_float(f64::NAN), "NaN");
        assert_eq!(format_float(f64::NEG_INFINITY), "-inf");
    }

    #[test]
    fn csv_layout() {
        let mut c = Curve::new("s", &[("x", Unit::Dimensionless), ("y", Unit::Nats)]);
        c.push(vec![1.0, 0.25]);
        c.push(vec![2.0, 1e-20]);
        let text = String::from_utf8(curve_csv(&c).unwrap()).unwrap();
        assert_eq!(text, "x,y\n1.0,0.25\n2.0,1e-20\n");
        assert_eq!(c.column("y").unwrap(), vec![0.25, 1e-20]);
    }

    #[test]
    fn verdicts_aggregate() {
        let mut r = ExperimentReport::new("t");
        assert!(r.passed());
        r.within("small", 1e-13, 1e-12, "");
        assert!(r.passed());
        r.within("nan", f64::NAN, 1.0, "");
        assert!(!r.passed());
    }
}

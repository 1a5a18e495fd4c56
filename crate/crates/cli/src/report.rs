// SPDX-License-Identifier: Apache-2.0

//! Tabular results and their CSV / JSON rendering.
//!
//! Output is byte-deterministic: floats are rounded to 12 significant digits
//! and printed in shortest round-trip form, lines end in LF, and manifest
//! parameters are kept in insertion order.

use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::CliError;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Rounds to 12 significant digits and prints the shortest decimal that
/// round-trips the rounded value. Very small or very large magnitudes use
/// exponent notation.
pub fn format_float(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let rounded = round_sig(x);
    let mag = rounded.abs();
    if (1e-5..1e15).contains(&mag) {
        format!("{rounded}")
    } else {
        format!("{rounded:e}")
    }
}

fn round_sig(x: f64) -> f64 {
    format!("{x:.11e}").parse().expect("formatted float parses")
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Int(u64),
    Float(f64),
}

impl Cell {
    fn render(&self) -> String {
        match *self {
            Cell::Int(k) => k.to_string(),
            Cell::Float(x) => format_float(x),
        }
    }

    fn to_json(self) -> Value {
        match self {
            Cell::Int(k) => json!(k),
            Cell::Float(x) if x.is_finite() => json!(round_sig(x)),
            Cell::Float(_) => Value::Null,
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}

impl From<usize> for Cell {
    fn from(k: usize) -> Self {
        Cell::Int(k as u64)
    }
}

impl From<u64> for Cell {
    fn from(k: u64) -> Self {
        Cell::Int(k)
    }
}

/// Provenance of one CLI run, written as `#` comment lines ahead of CSV
/// output or as the `manifest` object of JSON output.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct RunManifest {
    pub command: String,
    pub version: String,
    pub parameters: Vec<(String, String)>,
    pub artifacts: Vec<String>,
    pub notes: Vec<String>,
}

impl RunManifest {
    pub fn new(command: &str) -> Self {
        RunManifest {
            command: command.into(),
            version: VERSION.into(),
            parameters: Vec::new(),
            artifacts: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.parameters.push((key.into(), value.to_string()));
        self
    }

    pub fn note(&mut self, text: impl Into<String>) -> &mut Self {
        self.notes.push(text.into());
        self
    }

    fn json(&self) -> Value {
        let params: serde_json::Map<String, Value> = self
            .parameters
            .iter()
            .map(|(k, v)| (k.clone(), Value::String(v.clone())))
            .collect();
        json!({
            "command": self.command,
            "version": self.version,
            "parameters": params,
            "artifacts": self.artifacts,
            "notes": self.notes,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub manifest: RunManifest,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Report {
    pub fn new(manifest: RunManifest, columns: Vec<&'static str>) -> Self {
        Report {
            manifest,
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// Floats of column `name`, skipping integer cells.
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let k = self.columns.iter().position(|c| *c == name)?;
        Some(
            self.rows
                .iter()
                .map(|r| match r[k] {
                    Cell::Float(x) => x,
                    Cell::Int(i) => i as f64,
                })
                .collect(),
        )
    }

    pub fn to_csv(&self) -> String {
        let m = &self.manifest;
        let mut out = format!("# gaussnet {}\n# command: {}\n", m.version, m.command);
        for (k, v) in &m.parameters {
            out.push_str(&format!("# {k}: {v}\n"));
        }
        for a in &m.artifacts {
            out.push_str(&format!("# artifact: {a}\n"));
        }
        for n in &m.notes {
            out.push_str(&format!("# note: {n}\n"));
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::render).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| Value::Array(r.iter().map(|c| c.to_json()).collect()))
            .collect();
        let doc = json!({
            "manifest": self.manifest.json(),
            "columns": self.columns,
            "rows": rows,
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }
}

/// Writes `text` to `path`, or to stdout when no path is given.
pub fn emit(text: &str, path: Option<&Path>) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_formatting() {
        assert_eq!(format_float(0.0), "0");
        assert_eq!(format_float(-0.0), "0");
        assert_eq!(format_float(1.0), "1");
        assert_eq!(format_float(0.1), "0.1");
        assert_eq!(format_float(0.7018824866054364), "0.701882486605");
        assert_eq!(format_float(-2.5), "-2.5");
        assert_eq!(format_float(1234567.891234567), "1234567.89123");
        assert_eq!(format_float(3.0e-17), "3e-17");
        assert_eq!(format_float(1.0 / 3.0 * 1e-9), "3.33333333333e-10");
        assert_eq!(format_float(f64::NAN), "NaN");
    }

    #[test]
    fn csv_layout() {
        let mut m = RunManifest::new("demo");
        m.param("graph", "two").param("c", 2);
        m.artifacts.push("out.csv".into());
        let mut r = Report::new(m, vec!["n", "x"]);
        r.push(vec![Cell::Int(3), Cell::Float(0.5)]);
        r.push(vec![3usize.into(), 1e-20.into()]);
        let expected = format!(
            "# gaussnet {VERSION}\n# command: demo\n# graph: two\n# c: 2\n# artifact: out.csv\nn,x\n3,0.5\n3,1e-20\n"
        );
        assert_eq!(r.to_csv(), expected);
        assert_eq!(r.column("x"), Some(vec![0.5, 1e-20]));
        assert_eq!(r.column("y"), None);
    }

    #[test]
    fn json_layout() {
        let mut r = Report::new(RunManifest::new("demo"), vec!["x"]);
        r.push(vec![Cell::Float(0.1234567890123456)]);
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["manifest"]["command"], "demo");
        assert_eq!(v["columns"][0], "x");
        assert_eq!(v["rows"][0][0], 0.123456789012);
    }
}

//! Rendering of command results as json, csv or an aligned text table.

use clap::ValueEnum;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

/// A command result: structured JSON plus a flat table for csv/pretty.
pub struct Report {
    pub json: Value,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Report {
    pub fn new(json: Value, headers: &[&str], rows: Vec<Vec<String>>) -> Self {
        Report { json, headers: headers.iter().map(|s| s.to_string()).collect(), rows }
    }

    /// Single-row key/value report.
    pub fn key_values(json: Value, pairs: Vec<(&str, String)>) -> Self {
        let headers = pairs.iter().map(|(k, _)| k.to_string()).collect();
        let row = pairs.into_iter().map(|(_, v)| v).collect();
        Report { json, headers, rows: vec![row] }
    }

    pub fn render(&self, format: Format) -> Result<String, crate::CliError> {
        match format {
            Format::Json => Ok(serde_json::to_string_pretty(&self.json)? + "\n"),
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.headers)?;
                for r in &self.rows {
                    w.write_record(r)?;
                }
                let bytes = w.into_inner().map_err(|e| crate::CliError::Io(e.into_error()))?;
                Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
            }
            Format::Pretty => Ok(self.pretty()),
        }
    }

    fn pretty(&self) -> String {
        let widths: Vec<usize> = (0..self.headers.len())
            .map(|c| self.rows.iter().map(|r| r[c].len()).chain([self.headers[c].len()]).max().unwrap_or(0))
            .collect();
        let line = |cells: &[String]| {
            cells.iter().zip(&widths).map(|(s, w)| format!("{s:<w$}")).collect::<Vec<_>>().join("  ").trim_end().to_string()
        };
        let mut out = line(&self.headers) + "\n";
        out += &(widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().join("  ") + "\n");
        for r in &self.rows {
            out += &(line(r) + "\n");
        }
        out
    }
}

/// Full-precision float formatting shared by csv and pretty output.
pub fn num(x: f64) -> String {
    format!("{x:.15e}")
}

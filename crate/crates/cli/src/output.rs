//! Rendering of command reports as JSON or CSV, to stdout or a file.

use anyhow::{Context, Result};
use clap::ValueEnum;
use serde_json::Value;
use std::io::Write;
use std::path::PathBuf;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// A tabular view of a report for CSV output.
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

/// What a subcommand produced: the JSON report, an optional table and whether all its checks passed.
pub struct Report {
    pub json: Value,
    pub table: Option<Table>,
    pub ok: bool,
    /// short description of the failed check, when `ok` is false
    pub failure: Option<String>,
}

impl Report {
    pub fn passed(json: Value) -> Self {
        Report { json, table: None, ok: true, failure: None }
    }

    pub fn checked(json: Value, ok: bool, failure: impl FnOnce() -> String) -> Self {
        let failure = if ok { None } else { Some(failure()) };
        Report { json, table: None, ok, failure }
    }

    pub fn with_table(mut self, table: Table) -> Self {
        self.table = Some(table);
        self
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// key,value rows for reports without a natural table.
fn key_value_table(v: &Value) -> Table {
    let rows = match v {
        Value::Object(m) => m.iter().map(|(k, v)| vec![k.clone(), scalar(v)]).collect(),
        other => vec![vec!["value".into(), scalar(other)]],
    };
    Table { headers: vec!["key".into(), "value".into()], rows }
}

pub fn render(report: &Report, format: Format) -> Result<Vec<u8>> {
    match format {
        Format::Json => {
            let mut out = serde_json::to_vec_pretty(&report.json)?;
            out.push(b'\n');
            Ok(out)
        }
        Format::Csv => {
            let fallback;
            let table = match &report.table {
                Some(t) => t,
                None => {
                    fallback = key_value_table(&report.json);
                    &fallback
                }
            };
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&table.headers)?;
            for row in &table.rows {
                w.write_record(row)?;
            }
            Ok(w.into_inner().context("flushing CSV output")?)
        }
    }
}

pub fn emit(report: &Report, format: Format, path: Option<&PathBuf>) -> Result<()> {
    let bytes = render(report, format)?;
    match path {
        Some(p) => std::fs::write(p, bytes).with_context(|| format!("writing {}", p.display()))?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(&bytes)?;
            out.flush()?;
        }
    }
    Ok(())
}

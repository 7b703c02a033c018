//! Report rendering for `--format json|csv|text`.

use std::io::{self, Write};

use clap::ValueEnum;
use serde_json::{Map, Value};

/// Version of the JSON payload layout.
pub const SCHEMA_VERSION: u64 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Flat table for CSV output.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(headers: &[&str]) -> Self {
        Self { headers: headers.iter().map(|h| h.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub command: &'static str,
    /// JSON payload; `schema` and `command` are added when rendering.
    pub payload: Map<String, Value>,
    pub table: Table,
    pub text: String,
    /// `Some(false)` when a printed verification failed.
    pub verified: Option<bool>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.verified != Some(false)
    }

    pub fn json(&self) -> Value {
        let mut out = Map::new();
        out.insert("schema".into(), SCHEMA_VERSION.into());
        out.insert("command".into(), self.command.into());
        for (k, v) in &self.payload {
            out.insert(k.clone(), v.clone());
        }
        Value::Object(out)
    }

    /// Writes the machine-readable part to `out` and the human part to `err`.
    pub fn render(&self, format: Format, out: &mut impl Write, err: &mut impl Write) -> io::Result<()> {
        match format {
            Format::Text => out.write_all(self.text.as_bytes()),
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, &self.json())?;
                writeln!(out)?;
                err.write_all(self.text.as_bytes())
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(&mut *out);
                w.write_record(&self.table.headers)?;
                for row in &self.table.rows {
                    w.write_record(row)?;
                }
                w.flush()?;
                drop(w);
                err.write_all(self.text.as_bytes())
            }
        }
    }
}

pub fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

/// Formats an optional value for a CSV cell.
pub fn cell<T: ToString>(v: Option<T>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

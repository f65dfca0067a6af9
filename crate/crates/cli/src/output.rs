//! Rendering of command results as human-readable lines, JSON or CSV.

use std::fmt::Write as _;

use clap::ValueEnum;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
    Csv,
}

/// A command result: named fields, optionally followed by a table whose
/// rows are JSON objects. `columns` selects and orders what CSV and human
/// output show; JSON carries every field of every row.
#[derive(Debug, Default)]
pub struct Output {
    pub fields: Vec<(String, Value)>,
    pub columns: Vec<String>,
    pub rows: Option<Vec<Map<String, Value>>>,
    /// Raw text printed instead of the fields in human format.
    pub text: Option<String>,
}

impl Output {
    pub fn new() -> Self {
        Output::default()
    }

    pub fn field(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.fields.push((key.to_string(), value.into()));
        self
    }

    pub fn table(mut self, columns: &[&str], rows: Vec<Map<String, Value>>) -> Self {
        self.columns = columns.iter().map(|c| c.to_string()).collect();
        self.rows = Some(rows);
        self
    }

    pub fn text(mut self, text: String) -> Self {
        self.text = Some(text);
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut obj: Map<String, Value> = self.fields.iter().cloned().collect();
                if let Some(rows) = &self.rows {
                    obj.insert("rows".into(), Value::Array(rows.iter().cloned().map(Value::Object).collect()));
                }
                let mut s = serde_json::to_string_pretty(&Value::Object(obj)).expect("JSON values serialize");
                s.push('\n');
                s
            }
            Format::Csv => match &self.rows {
                Some(rows) => {
                    let mut out = self.columns.join(",");
                    out.push('\n');
                    for row in rows {
                        let cells: Vec<String> =
                            self.columns.iter().map(|c| csv_cell(row.get(c).unwrap_or(&Value::Null))).collect();
                        out.push_str(&cells.join(","));
                        out.push('\n');
                    }
                    out
                }
                None => {
                    let keys: Vec<&str> = self.fields.iter().map(|(k, _)| k.as_str()).collect();
                    let values: Vec<String> = self.fields.iter().map(|(_, v)| csv_cell(v)).collect();
                    format!("{}\n{}\n", keys.join(","), values.join(","))
                }
            },
            Format::Human => {
                let mut out = String::new();
                if let Some(text) = &self.text {
                    out.push_str(text);
                } else {
                    for (k, v) in &self.fields {
                        let _ = writeln!(out, "{k}: {}", human(v));
                    }
                }
                if let Some(rows) = &self.rows {
                    for row in rows {
                        let cells: Vec<String> = self
                            .columns
                            .iter()
                            .map(|c| format!("{c}={}", human(row.get(c).unwrap_or(&Value::Null))))
                            .collect();
                        let _ = writeln!(out, "{}", cells.join(" "));
                    }
                }
                out
            }
        }
    }
}

fn human(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        Value::Array(items) => format!("[{}]", items.iter().map(human).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}

fn csv_cell(v: &Value) -> String {
    match v {
        Value::Number(n) if n.is_f64() => sig17(n.as_f64().expect("f64 number")),
        Value::Bool(b) => if *b { "1" } else { "0" }.into(),
        Value::String(s) if s.contains([',', '"', '\n']) => format!("\"{}\"", s.replace('"', "\"\"")),
        other => human(other),
    }
}

/// Decimal with 17 significant digits.
pub fn sig17(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { "0".into() } else { x.to_string() };
    }
    let magnitude = x.abs().log10().floor() as i32;
    if !(-5..=16).contains(&magnitude) {
        return format!("{x:.16e}");
    }
    let decimals = (16 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

/// A JSON number, or null for non-finite values.
pub fn num(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

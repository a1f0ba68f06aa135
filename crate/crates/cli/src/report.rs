//! Command reports and their JSON, CSV and text renderings.
//!
//! JSON output is canonical: fields keep insertion order and every float is
//! written with 17 significant digits, so parsing a report and serializing
//! it again reproduces the same bytes.

use std::fmt::Write as _;
use std::str::FromStr;

use hyperxform_core::Scalar;
use serde_json::{Map, Number, Value};

use crate::config::OutputFormat;

pub type Fields = Map<String, Value>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Fail,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Fail => "fail",
        }
    }
}

/// Float with 17 significant digits; non-finite values become `null`.
pub fn num(v: f64) -> Value {
    if !v.is_finite() {
        return Value::Null;
    }
    let text = format!("{v:.16e}");
    Value::Number(Number::from_str(&text).expect("formatted float is a valid JSON number"))
}

pub fn int(v: usize) -> Value {
    Value::Number(Number::from(v as u64))
}

pub fn text(v: impl Into<String>) -> Value {
    Value::String(v.into())
}

/// Numeric value of a scalar, plus its exact `p/q` form under `<name>_exact`
/// when it is exact.
pub fn insert_scalar(fields: &mut Fields, name: &str, value: &Scalar) {
    fields.insert(name.to_string(), num(value.to_f64()));
    if value.is_exact() {
        fields.insert(format!("{name}_exact"), text(value.to_string()));
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: String,
    pub inputs: Fields,
    pub outputs: Fields,
    pub status: Status,
    pub error: Option<String>,
    /// Process exit code; not part of the serialized report.
    pub exit_code: u8,
    /// Rows for CSV and text output.
    pub rows: Vec<Fields>,
}

impl Report {
    pub fn new(command: impl Into<String>, inputs: Fields) -> Self {
        Report {
            command: command.into(),
            inputs,
            outputs: Fields::new(),
            status: Status::Ok,
            error: None,
            exit_code: 0,
            rows: Vec::new(),
        }
    }

    pub fn fail(&mut self, exit_code: u8, error: Option<String>) {
        self.status = Status::Fail;
        self.exit_code = self.exit_code.max(exit_code);
        if error.is_some() {
            self.error = error;
        }
    }

    pub fn to_value(&self) -> Value {
        let mut obj = Fields::new();
        obj.insert("command".into(), text(self.command.clone()));
        obj.insert("inputs".into(), Value::Object(self.inputs.clone()));
        obj.insert("outputs".into(), Value::Object(self.outputs.clone()));
        obj.insert("status".into(), text(self.status.as_str()));
        obj.insert("error".into(), self.error.clone().map_or(Value::Null, Value::String));
        Value::Object(obj)
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string(&self.to_value()).expect("report serializes");
        out.push('\n');
        out
    }

    /// Header plus one line per row. Reports without rows emit their
    /// outputs as a single row.
    pub fn to_csv(&self) -> String {
        let rows: Vec<Fields> = if self.rows.is_empty() { vec![self.outputs.clone()] } else { self.rows.clone() };
        let mut header: Vec<&String> = Vec::new();
        for row in &rows {
            for key in row.keys() {
                if !header.contains(&key) {
                    header.push(key);
                }
            }
        }
        let mut out = String::new();
        out.push_str(&header.iter().map(|h| csv_cell(&text(h.as_str()))).collect::<Vec<_>>().join(","));
        out.push('\n');
        for row in &rows {
            let cells: Vec<String> = header.iter().map(|h| row.get(*h).map_or(String::new(), csv_cell)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} [{}]", self.command, self.status.as_str());
        for (key, value) in &self.inputs {
            let _ = writeln!(out, "  input  {key} = {}", plain(value));
        }
        for (key, value) in &self.outputs {
            if matches!(value, Value::Array(_)) {
                continue;
            }
            let _ = writeln!(out, "  output {key} = {}", plain(value));
        }
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(|(k, v)| format!("{k}={}", plain(v))).collect();
            let _ = writeln!(out, "  {}", line.join(" "));
        }
        if let Some(err) = &self.error {
            let _ = writeln!(out, "  error: {err}");
        }
        out
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => self.to_json(),
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Text => self.to_text(),
        }
    }
}

fn plain(value: &Value) -> String {
    match value {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn csv_cell(value: &Value) -> String {
    let raw = plain(value);
    if raw.contains([',', '"', '\n']) {
        format!("\"{}\"", raw.replace('"', "\"\""))
    } else {
        raw
    }
}

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use clap::ValueEnum;
use serde_json::{Map, Value};

use crate::Failure;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Result of one subcommand: lines for the terminal, a JSON summary and an
/// optional table for CSV output.
#[derive(Debug, Default)]
pub struct Report {
    pub lines: Vec<String>,
    pub summary: Map<String, Value>,
    pub table: Option<(Vec<String>, Vec<Vec<String>>)>,
    /// Replaces the JSON report body, for commands that produce a document.
    pub document: Option<String>,
    pub passed: bool,
}

impl Report {
    pub fn new() -> Self {
        Self {
            passed: true,
            ..Self::default()
        }
    }

    pub fn line(&mut self, text: impl Into<String>) -> &mut Self {
        self.lines.push(text.into());
        self
    }

    pub fn field(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.summary.insert(key.to_string(), value.into());
        self
    }

    pub fn table(&mut self, header: &[&str], rows: Vec<Vec<String>>) -> &mut Self {
        self.table = Some((header.iter().map(|h| h.to_string()).collect(), rows));
        self
    }

    /// Marks the run as a verification failure unless `ok`.
    pub fn require(&mut self, ok: bool) -> &mut Self {
        self.passed &= ok;
        self
    }

    fn json(&self) -> String {
        let mut body = self.summary.clone();
        body.insert("passed".into(), Value::Bool(self.passed));
        if let Some((header, rows)) = &self.table {
            let rows = rows
                .iter()
                .map(|r| {
                    Value::Object(
                        header
                            .iter()
                            .cloned()
                            .zip(r.iter().map(|c| Value::String(c.clone())))
                            .collect(),
                    )
                })
                .collect();
            body.insert("table".into(), Value::Array(rows));
        }
        let mut text =
            serde_json::to_string_pretty(&Value::Object(body)).expect("report serialization");
        text.push('\n');
        text
    }

    fn csv(&self) -> Result<String, Failure> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Failure::Usage(e.to_string());
        match &self.table {
            Some((header, rows)) => {
                w.write_record(header).map_err(io)?;
                for r in rows {
                    w.write_record(r).map_err(io)?;
                }
            }
            None => {
                w.write_record(["key", "value"]).map_err(io)?;
                for (k, v) in &self.summary {
                    let v = match v {
                        Value::String(s) => s.clone(),
                        other => other.to_string(),
                    };
                    w.write_record([k.as_str(), v.as_str()]).map_err(io)?;
                }
            }
        }
        let bytes = w.into_inner().map_err(|e| Failure::Usage(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv is utf-8"))
    }

    /// Prints the terminal lines and writes the report file, if any.
    pub fn emit(&self, out: Option<&Path>, format: Format) -> Result<(), Failure> {
        let stdout = io::stdout();
        let mut lock = stdout.lock();
        for l in &self.lines {
            writeln!(lock, "{l}").map_err(|e| Failure::Usage(e.to_string()))?;
        }
        if let Some(path) = out {
            let body = match format {
                Format::Json => self.document.clone().unwrap_or_else(|| self.json()),
                Format::Csv => self.csv()?,
            };
            fs::write(path, body)
                .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        }
        Ok(())
    }
}

/// Shortest round-trip form; infinities as `inf`.
pub fn num(x: f64) -> String {
    if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.to_string()
    } else {
        format!("{x}")
    }
}

/// JSON number, or the string `inf`/`nan` when not finite.
pub fn jnum(x: f64) -> Value {
    serde_json::Number::from_f64(x)
        .map(Value::Number)
        .unwrap_or_else(|| Value::String(num(x)))
}

pub fn verdict(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}

//! Report envelope shared by every command and its two renderings.
//!
//! Everything measured in wall-clock time lives in `timings_ms`; the rest of
//! the report is a deterministic function of the job.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::config::Format;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub input: Value,
    pub result: Value,
    pub timings_ms: Map<String, Value>,
}

impl Report {
    pub fn new(command: &str, input: Value, result: Value) -> Self {
        Self { schema_version: SCHEMA_VERSION, command: command.into(), input, result, timings_ms: Map::new() }
    }

    pub fn time(&mut self, key: &str, ms: f64) {
        self.timings_ms.insert(key.into(), Value::from(ms));
    }

    /// The report with the timings block emptied, for reproducibility checks.
    pub fn without_timings(&self) -> Self {
        Self { timings_ms: Map::new(), ..self.clone() }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("report serializes") + "\n",
            Format::Table => self.table(),
        }
    }

    fn table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "g2g {}", self.command);
        if let Value::Object(map) = &self.result {
            let mut scalars = Vec::new();
            for (k, v) in map {
                match v {
                    Value::Array(rows) if rows.iter().all(Value::is_object) && !rows.is_empty() => {
                        out.push('\n');
                        out.push_str(&rows_table(k, rows));
                    }
                    Value::Object(inner) => {
                        for (ik, iv) in inner {
                            if let Value::Object(deeper) = iv {
                                for (dk, dv) in deeper {
                                    scalars.push((format!("{k}.{ik}.{dk}"), dv));
                                }
                            } else {
                                scalars.push((format!("{k}.{ik}"), iv));
                            }
                        }
                    }
                    _ => scalars.push((k.clone(), v)),
                }
            }
            if !scalars.is_empty() {
                out.push('\n');
                let width = scalars.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
                for (k, v) in scalars {
                    let _ = writeln!(out, "{k:<width$}  {}", cell(v));
                }
            }
        }
        if !self.timings_ms.is_empty() {
            out.push_str("\ntimings (ms)\n");
            for (k, v) in &self.timings_ms {
                match v {
                    Value::Array(rows) if rows.iter().all(Value::is_object) && !rows.is_empty() => {
                        out.push_str(&rows_table(k, rows))
                    }
                    _ => {
                        let _ = writeln!(out, "  {k}: {}", cell(v));
                    }
                }
            }
        }
        out
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        Value::Number(n) => match n.as_f64() {
            Some(x) if n.is_f64() => format!("{x:.6e}"),
            _ => n.to_string(),
        },
        other => other.to_string(),
    }
}

fn rows_table(title: &str, rows: &[Value]) -> String {
    let mut cols: Vec<String> = Vec::new();
    for r in rows {
        if let Value::Object(m) = r {
            for k in m.keys() {
                if !cols.contains(k) {
                    cols.push(k.clone());
                }
            }
        }
    }
    let body: Vec<Vec<String>> =
        rows.iter().map(|r| cols.iter().map(|c| r.get(c).map(cell).unwrap_or_else(|| "-".into())).collect()).collect();
    let widths: Vec<usize> = cols
        .iter()
        .enumerate()
        .map(|(i, c)| body.iter().map(|r| r[i].chars().count()).max().unwrap_or(0).max(c.len()))
        .collect();
    let mut out = format!("{title}\n");
    let line = |cells: &[String]| {
        cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect::<Vec<_>>().join("  ").trim_end().to_string()
    };
    out.push_str(&line(&cols));
    out.push('\n');
    for r in &body {
        out.push_str(&line(r));
        out.push('\n');
    }
    out
}

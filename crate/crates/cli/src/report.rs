use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

pub const SCHEMA: u32 = 1;

#[derive(Serialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub degree: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub payload: Value,
    pub status: Status,
    pub failures: Vec<Value>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Failed,
}

/// What a subcommand hands back: the JSON payload, a human table and any
/// certificate diffs.
pub struct Outcome {
    pub payload: Value,
    pub table: Table,
    pub failures: Vec<Value>,
}

impl Report {
    pub fn new(command: &str, degree: Option<u32>, seed: Option<u64>, outcome: Outcome) -> (Report, Table) {
        let status = if outcome.failures.is_empty() { Status::Ok } else { Status::Failed };
        let report = Report {
            schema: SCHEMA,
            command: command.to_string(),
            degree,
            seed,
            payload: outcome.payload,
            status,
            failures: outcome.failures,
        };
        (report, outcome.table)
    }
}

#[derive(Default)]
pub struct Table {
    pub title: String,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub notes: Vec<String>,
}

impl Table {
    pub fn new(title: impl Into<String>, headers: &[&str]) -> Self {
        Table { title: title.into(), headers: headers.iter().map(|s| s.to_string()).collect(), ..Default::default() }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        self.rows.push(cells);
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn render(&self, status: Status, failures: &[Value]) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.title);
        if !self.headers.is_empty() {
            let mut widths: Vec<usize> = self.headers.iter().map(|h| h.len()).collect();
            for r in &self.rows {
                for (i, c) in r.iter().enumerate() {
                    if i < widths.len() {
                        widths[i] = widths[i].max(c.chars().count());
                    }
                }
            }
            let line = |cells: &[String]| {
                let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}", w = *w)).collect();
                padded.join("  ").trim_end().to_string()
            };
            let _ = writeln!(out, "{}", line(&self.headers));
            let _ = writeln!(out, "{}", widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().join("  "));
            for r in &self.rows {
                let _ = writeln!(out, "{}", line(r));
            }
        }
        for n in &self.notes {
            let _ = writeln!(out, "{n}");
        }
        let _ = writeln!(out, "status: {}", if status == Status::Ok { "ok" } else { "failed" });
        for f in failures {
            let _ = writeln!(out, "  failure: {f}");
        }
        out
    }
}

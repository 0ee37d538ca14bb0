//! Report assembly and the three output formats.

use std::io::{self, Write};

use qkspin::report::Check;
use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub status: &'static str,
    pub witness: Option<String>,
}

impl From<&Check> for CheckRecord {
    fn from(c: &Check) -> Self {
        CheckRecord { name: c.name.clone(), status: if c.passed { "pass" } else { "fail" }, witness: c.witness.clone() }
    }
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub params: Value,
    pub checks: Vec<CheckRecord>,
    pub values: Value,
    pub timing_ms: u64,
    /// Extra lines for the table format only.
    #[serde(skip)]
    pub notes: Vec<String>,
    #[serde(skip)]
    pub tables: Vec<Table>,
}

/// A labeled matrix for table output.
#[derive(Debug, Clone)]
pub struct Table {
    pub title: String,
    pub columns: Vec<String>,
    pub rows: Vec<(String, Vec<String>)>,
}

impl Report {
    pub fn new(command: &str, params: Value) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            params,
            checks: Vec::new(),
            values: Value::Object(Default::default()),
            timing_ms: 0,
            notes: Vec::new(),
            tables: Vec::new(),
        }
    }

    pub fn add_checks(&mut self, checks: &[Check]) {
        self.checks.extend(checks.iter().map(CheckRecord::from));
    }

    pub fn set(&mut self, key: &str, v: Value) {
        if let Value::Object(m) = &mut self.values {
            m.insert(key.to_string(), v);
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == "pass")
    }

    pub fn write(&self, format: Format, out: &mut impl Write) -> io::Result<()> {
        match format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, self)?;
                writeln!(out)
            }
            Format::Table => self.write_table(out),
            Format::Csv => self.write_csv(out),
        }
    }

    fn write_table(&self, out: &mut impl Write) -> io::Result<()> {
        writeln!(out, "{}  {}", self.command, self.params)?;
        for t in &self.tables {
            writeln!(out)?;
            writeln!(out, "{}", t.title)?;
            let label_w = t.rows.iter().map(|(l, _)| l.chars().count()).max().unwrap_or(0);
            let cell_w = t
                .columns
                .iter()
                .chain(t.rows.iter().flat_map(|(_, r)| r.iter()))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(1);
            let head: Vec<String> = t.columns.iter().map(|c| pad(c, cell_w)).collect();
            writeln!(out, "{}  {}", " ".repeat(label_w), head.join("  "))?;
            for (label, row) in &t.rows {
                let cells: Vec<String> = row.iter().map(|c| pad(c, cell_w)).collect();
                writeln!(out, "{}  {}", pad(label, label_w), cells.join("  "))?;
            }
        }
        if !self.tables.is_empty() || !self.notes.is_empty() {
            writeln!(out)?;
        }
        for n in &self.notes {
            writeln!(out, "{n}")?;
        }
        for c in &self.checks {
            match (&c.witness, c.status) {
                (Some(w), "fail") => writeln!(out, "FAIL  {}: {w}", c.name)?,
                _ => writeln!(out, "{}  {}", c.status.to_uppercase(), c.name)?,
            }
        }
        if !self.checks.is_empty() {
            let passed = self.checks.iter().filter(|c| c.status == "pass").count();
            writeln!(out, "{passed}/{} checks passed", self.checks.len())?;
        }
        writeln!(out, "time: {} ms", self.timing_ms)
    }

    fn write_csv(&self, out: &mut impl Write) -> io::Result<()> {
        let mut w = csv::WriterBuilder::new().flexible(true).from_writer(out);
        w.write_record(["kind", "name", "status", "value"])?;
        for c in &self.checks {
            w.write_record(["check", &c.name, c.status, c.witness.as_deref().unwrap_or("")])?;
        }
        let mut flat = Vec::new();
        flatten("", &self.values, &mut flat);
        for (k, v) in flat {
            w.write_record(["value", &k, "", &v])?;
        }
        w.write_record(["timing_ms", "", "", &self.timing_ms.to_string()])?;
        w.flush()
    }
}

fn pad(s: &str, width: usize) -> String {
    let n = s.chars().count();
    format!("{}{s}", " ".repeat(width.saturating_sub(n)))
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let join = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) => m.iter().for_each(|(k, x)| flatten(&join(k), x, out)),
        Value::Array(a) => a.iter().enumerate().for_each(|(i, x)| flatten(&join(&i.to_string()), x, out)),
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

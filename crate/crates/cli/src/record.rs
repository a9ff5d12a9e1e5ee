//! Flat, format-independent output records.

use std::io::Write;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// One result value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Field {
    Flag(bool),
    Num(f64),
    Text(String),
}

impl Field {
    fn to_cell(&self) -> String {
        match self {
            Field::Flag(b) => b.to_string(),
            Field::Num(x) if *x != 0.0 && (x.abs() < 1e-4 || x.abs() >= 1e12) => format!("{x:e}"),
            Field::Num(x) => x.to_string(),
            Field::Text(s) => s.clone(),
        }
    }

    #[cfg(test)]
    fn from_cell(cell: &str) -> Self {
        if let Ok(b) = cell.parse::<bool>() {
            Field::Flag(b)
        } else if let Some(x) = cell.parse::<f64>().ok().filter(|x| x.is_finite()) {
            Field::Num(x)
        } else {
            Field::Text(cell.to_string())
        }
    }
}

/// Round to 12 significant digits.
pub fn sig12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub command: String,
    pub subject: String,
    pub results: IndexMap<String, Field>,
    pub notes: Vec<String>,
    pub config: String,
}

impl OutputRecord {
    pub fn new(command: &str, subject: impl Into<String>, config: &str) -> Self {
        Self {
            command: command.to_string(),
            subject: subject.into(),
            results: IndexMap::new(),
            notes: Vec::new(),
            config: config.to_string(),
        }
    }

    /// Non-finite numbers are stored as text so every record stays valid JSON.
    pub fn num(&mut self, key: &str, x: f64) -> &mut Self {
        let field = if x.is_finite() {
            Field::Num(sig12(x))
        } else {
            Field::Text(x.to_string())
        };
        self.results.insert(key.to_string(), field);
        self
    }

    pub fn text(&mut self, key: &str, s: impl Into<String>) -> &mut Self {
        self.results.insert(key.to_string(), Field::Text(s.into()));
        self
    }

    pub fn flag(&mut self, key: &str, b: bool) -> &mut Self {
        self.results.insert(key.to_string(), Field::Flag(b));
        self
    }

    pub fn note(&mut self, note: &str) -> &mut Self {
        if !self.notes.iter().any(|n| n == note) {
            self.notes.push(note.to_string());
        }
        self
    }
}

pub const CSV_HEADER: [&str; 7] = [
    "record", "command", "subject", "key", "value", "notes", "config",
];

/// Long-format CSV: one row per result key, grouped by record index.
pub fn write_csv<W: Write>(records: &[OutputRecord], out: W) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for (i, r) in records.iter().enumerate() {
        let notes = r.notes.join(";");
        for (key, field) in &r.results {
            w.write_record([
                i.to_string().as_str(),
                &r.command,
                &r.subject,
                key,
                &field.to_cell(),
                &notes,
                &r.config,
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Inverse of [`write_csv`].
#[cfg(test)]
pub fn read_csv(text: &str) -> Result<Vec<OutputRecord>, CliError> {
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let mut out: Vec<(String, OutputRecord)> = Vec::new();
    for row in rdr.records() {
        let row = row?;
        let idx = row[0].to_string();
        if out.last().map(|(i, _)| i != &idx).unwrap_or(true) {
            let mut r = OutputRecord::new(&row[1], &row[2], &row[6]);
            r.notes = row[5]
                .split(';')
                .filter(|s| !s.is_empty())
                .map(str::to_string)
                .collect();
            out.push((idx, r));
        }
        let rec = &mut out.last_mut().expect("just pushed").1;
        rec.results
            .insert(row[3].to_string(), Field::from_cell(&row[4]));
    }
    Ok(out.into_iter().map(|(_, r)| r).collect())
}

pub fn write_json_lines<W: Write>(records: &[OutputRecord], mut out: W) -> Result<(), CliError> {
    for r in records {
        serde_json::to_writer(&mut out, r)?;
        writeln!(out)?;
    }
    Ok(())
}

pub fn write_human<W: Write>(records: &[OutputRecord], mut out: W) -> Result<(), CliError> {
    for r in records {
        writeln!(out, "{}  {}", r.command, r.subject)?;
        let width = r.results.keys().map(String::len).max().unwrap_or(0);
        for (key, field) in &r.results {
            writeln!(out, "  {key:<width$}  {}", field.to_cell())?;
        }
        if !r.notes.is_empty() {
            writeln!(out, "  [{}]", r.notes.join(", "))?;
        }
    }
    Ok(())
}

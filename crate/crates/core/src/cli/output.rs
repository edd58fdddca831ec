//! Deterministic CSV / JSON emitters.
//!
//! Reals are always written with 17 significant digits in scientific
//! notation; negative zero is written as zero.

use std::fmt::Write as _;
use std::io::{self, Write};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Real(f64),
    Text(String),
    Bool(bool),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Real(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        Cell::Real(v.unwrap_or(f64::NAN))
    }
}

pub fn format_real(v: f64) -> String {
    if v.is_nan() {
        "nan".to_string()
    } else if v.is_infinite() {
        if v > 0.0 { "inf" } else { "-inf" }.to_string()
    } else if v == 0.0 {
        format!("{:.16e}", 0.0)
    } else {
        format!("{v:.16e}")
    }
}

impl Cell {
    fn csv_field(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Real(v) => format_real(*v),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
        }
    }

    fn json_value(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Real(v) if v.is_finite() => format_real(*v),
            Cell::Real(_) => "null".to_string(),
            Cell::Text(s) => serde_json::to_string(s).expect("string serialization"),
            Cell::Bool(b) => b.to_string(),
        }
    }
}

pub type Fields = Vec<(String, Cell)>;

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

/// Everything one command emits.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: String,
    pub config: Fields,
    pub table: Table,
    /// Scalar results; part of the JSON object, sent to stderr in CSV mode.
    pub summary: Fields,
}

impl Report {
    pub fn write(&self, format: Format, out: &mut dyn Write) -> io::Result<()> {
        match format {
            Format::Csv => self.write_csv(out),
            Format::Json => out.write_all(self.to_json().as_bytes()),
        }
    }

    fn write_csv(&self, out: &mut dyn Write) -> io::Result<()> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(out);
        w.write_record(&self.table.columns)?;
        for row in &self.table.rows {
            w.write_record(row.iter().map(Cell::csv_field))?;
        }
        w.flush()
    }

    pub fn summary_lines(&self) -> String {
        let mut s = String::new();
        for (k, v) in &self.summary {
            let _ = writeln!(s, "{k}: {}", v.csv_field());
        }
        s
    }

    pub fn to_json(&self) -> String {
        let key = |k: &str| serde_json::to_string(k).expect("string serialization");
        let object = |fields: &Fields| {
            let body: Vec<String> = fields.iter().map(|(k, v)| format!("{}:{}", key(k), v.json_value())).collect();
            format!("{{{}}}", body.join(","))
        };
        let columns: Vec<String> = self.table.columns.iter().map(|c| key(c)).collect();
        let data: Vec<String> = self
            .table
            .columns
            .iter()
            .enumerate()
            .map(|(j, c)| {
                let values: Vec<String> = self.table.rows.iter().map(|r| r[j].json_value()).collect();
                format!("{}:[{}]", key(c), values.join(","))
            })
            .collect();
        format!(
            "{{\"command\":{},\"config\":{},\"columns\":[{}],\"data\":{{{}}},\"summary\":{}}}\n",
            key(&self.command),
            object(&self.config),
            columns.join(","),
            data.join(","),
            object(&self.summary),
        )
    }
}

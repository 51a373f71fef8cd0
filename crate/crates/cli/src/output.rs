//! CSV emission.

use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use crate::CliError;

/// One CSV field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
}

impl Cell {
    /// Integers as-is, floats with 17 significant digits.
    pub fn render(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => format!("{v:.16e}"),
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

/// Writes a header row and the data rows, LF terminated.
pub fn write_csv<W: Write>(sink: W, headers: &[&str], rows: &[Vec<Cell>]) -> Result<(), csv::Error> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(sink);
    w.write_record(headers)?;
    for row in rows {
        w.write_record(row.iter().map(Cell::render))?;
    }
    w.flush()?;
    Ok(())
}

/// [`write_csv`] to `path`, or to stdout when `path` is `None`.
pub fn emit_csv(headers: &[&str], rows: &[Vec<Cell>], path: Option<&Path>) -> Result<(), CliError> {
    if let Some(bad) = rows.iter().position(|r| r.len() != headers.len()) {
        return Err(CliError::Config(format!("row {bad} has {} fields, expected {}", rows[bad].len(), headers.len())));
    }
    let (result, shown) = match path {
        Some(p) => {
            let file = File::create(p).map_err(|e| CliError::Io { path: p.display().to_string(), source: e })?;
            (write_csv(io::BufWriter::new(file), headers, rows), p.display().to_string())
        }
        None => (write_csv(io::stdout().lock(), headers, rows), "<stdout>".to_string()),
    };
    result.map_err(|e| CliError::Io { path: shown, source: e.into() })
}

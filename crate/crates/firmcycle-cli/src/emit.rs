//! Deterministic artifact emission: every output is a named table rendered
//! to CSV or JSON with floats at 17 significant digits, so identical runs
//! produce byte-identical files.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::config::OutputFormat;

/// One table cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Str(String),
    Null,
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}
impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}
impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Str(v.to_string())
    }
}
impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Null, Cell::Num)
    }
}

/// 17 significant digits: one leading digit plus 16 after the point.
pub fn fmt_float(v: f64) -> String {
    format!("{v:.16e}")
}

/// A named table: column headers plus rows.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: &'static str,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(name: &'static str, columns: Vec<&'static str>) -> Self {
        Table { name, columns, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width mismatch in {}", self.name);
        self.rows.push(row);
    }

    fn render_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .map(|c| match c {
                    Cell::Num(v) => fmt_float(*v),
                    Cell::Int(v) => v.to_string(),
                    Cell::Str(s) => {
                        if s.contains([',', '"', '\n']) {
                            format!("\"{}\"", s.replace('"', "\"\""))
                        } else {
                            s.clone()
                        }
                    }
                    Cell::Null => String::new(),
                })
                .collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    fn render_json(&self) -> String {
        let mut out = String::from("[\n");
        for (i, row) in self.rows.iter().enumerate() {
            out.push_str("  {");
            for (j, (col, cell)) in self.columns.iter().zip(row).enumerate() {
                if j > 0 {
                    out.push_str(", ");
                }
                let value = match cell {
                    Cell::Num(v) => fmt_float(*v),
                    Cell::Int(v) => v.to_string(),
                    Cell::Str(s) => serde_json::to_string(s).expect("string to JSON"),
                    Cell::Null => "null".to_string(),
                };
                let _ = write!(out, "\"{col}\": {value}");
            }
            out.push('}');
            if i + 1 < self.rows.len() {
                out.push(',');
            }
            out.push('\n');
        }
        out.push_str("]\n");
        out
    }

    /// Write the table to `<dir>/<name>.<ext>` and return the path.
    pub fn write(&self, dir: &Path, format: OutputFormat) -> std::io::Result<PathBuf> {
        let (ext, body) = match format {
            OutputFormat::Csv => ("csv", self.render_csv()),
            OutputFormat::Json => ("json", self.render_json()),
        };
        let path = dir.join(format!("{}.{ext}", self.name));
        std::fs::write(&path, body)?;
        Ok(path)
    }
}

//! CSV tables with a header row, `\n` line endings and round-trip float text.

use std::fs;
use std::path::Path;

use crate::error::{LabError, Result};

/// Shortest text that parses back to exactly `x`. Plain decimal in
/// `[1e-5, 1e16)`, scientific notation elsewhere.
pub fn fmt_f64(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 || !x.is_finite() || (1e-5..1e16).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

/// A rectangular table with named columns.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Table { header: header.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        assert_eq!(row.len(), self.header.len(), "row arity must match the header");
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }

    /// Parses every cell of column `name` as `f64`.
    pub fn floats(&self, name: &str) -> Option<Vec<f64>> {
        let c = self.column(name)?;
        self.rows.iter().map(|r| r[c].parse().ok()).collect()
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        w.write_record(&self.header).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row).expect("in-memory write");
        }
        w.into_inner().expect("in-memory flush")
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_bytes()).map_err(|e| LabError::io(path, e))
    }

    pub fn read(path: &Path) -> Result<Table> {
        let bytes = fs::read(path).map_err(|e| LabError::io(path, e))?;
        let mut r = csv::ReaderBuilder::new().has_headers(true).from_reader(bytes.as_slice());
        let csv_err = |e: csv::Error| LabError::Csv { path: path.to_path_buf(), message: e.to_string() };
        let header = r.headers().map_err(csv_err)?.iter().map(String::from).collect();
        let mut table = Table { header, rows: Vec::new() };
        for rec in r.records() {
            table.rows.push(rec.map_err(csv_err)?.iter().map(String::from).collect());
        }
        Ok(table)
    }
}

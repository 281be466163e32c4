//! Labelled point sets stored as CSV: `x_1, …, x_d, label` with a header row.

use std::path::Path;

use stepbias_core::{Dataset, Matrix};

use crate::csvio::{fmt_f64, Table};
use crate::error::{LabError, Result};

pub fn to_table(data: &Dataset) -> Table {
    let d = data.dim();
    let mut t = Table::new((1..=d).map(|j| format!("x_{j}")).chain(["label".to_string()]));
    for i in 0..data.len() {
        let mut row: Vec<String> = data.point(i).iter().map(|&v| fmt_f64(v)).collect();
        row.push(fmt_f64(data.labels()[i]));
        t.push(row);
    }
    t
}

pub fn write_dataset(data: &Dataset, path: &Path) -> Result<()> {
    to_table(data).write(path)
}

pub fn load_dataset(path: &Path) -> Result<Dataset> {
    let table = Table::read(path)?;
    let bad = |message: String| LabError::Csv { path: path.to_path_buf(), message };
    let d = table.header.len().saturating_sub(1);
    let expected: Vec<String> = (1..=d).map(|j| format!("x_{j}")).chain(["label".to_string()]).collect();
    if d == 0 || table.header != expected {
        return Err(bad(format!("header must be x_1..x_d,label; found {}", table.header.join(","))));
    }
    if table.rows.is_empty() {
        return Err(bad("no samples".into()));
    }
    let mut values = Vec::with_capacity(table.rows.len() * d);
    let mut labels = Vec::with_capacity(table.rows.len());
    for (r, row) in table.rows.iter().enumerate() {
        let mut parsed = Vec::with_capacity(d + 1);
        for (c, cell) in row.iter().enumerate() {
            let v: f64 = cell
                .trim()
                .parse()
                .map_err(|_| bad(format!("row {}, column {}: `{cell}` is not a number", r + 2, c + 1)))?;
            if !v.is_finite() {
                return Err(bad(format!("row {}, column {}: value must be finite", r + 2, c + 1)));
            }
            parsed.push(v);
        }
        labels.push(parsed.pop().expect("row has d + 1 cells"));
        values.extend(parsed);
    }
    let points = Matrix::from_row_major(table.rows.len(), d, values)?;
    Ok(Dataset::new(points, labels)?)
}

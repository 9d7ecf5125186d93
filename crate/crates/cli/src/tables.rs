//! CSV input and output.

use std::path::Path;

use ecsplit_core::matkit::CMatrix;
use ecsplit_core::mimo::ExperimentTable;
use thiserror::Error;

use crate::complex_text::{format_complex, parse_complex};

pub const SUMRATE_HEADER: [&str; 9] = [
    "snr_db",
    "method",
    "mean_capacity_bits",
    "stderr_capacity_bits",
    "mean_rho",
    "mean_sigma",
    "mean_projection_residual",
    "frames_ok",
    "frames_failed",
];

pub const SWEEP_HEADER: [&str; 6] = ["snr_db", "frame", "alpha", "sigma", "rho", "capacity_bits"];

#[derive(Debug, Error)]
pub enum MatrixFileError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Csv(#[from] csv::Error),
    #[error("row {row}, column {col}: `{text}` is not a complex number")]
    Entry {
        row: usize,
        col: usize,
        text: String,
    },
    #[error("row {row} has {found} entries, expected {expected}")]
    Ragged {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("matrix file has no entries")]
    Empty,
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
}

/// Ten significant digits in scientific notation.
pub fn fmt_real(x: f64) -> String {
    format!("{x:.9e}")
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_real).unwrap_or_default()
}

/// Reads a square complex matrix: one row per line, comma-separated entries.
/// Lines starting with `#` are skipped.
pub fn read_matrix(path: &Path) -> Result<CMatrix, MatrixFileError> {
    let text = std::fs::read_to_string(path).map_err(|source| MatrixFileError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_matrix(&text)
}

pub fn parse_matrix(text: &str) -> Result<CMatrix, MatrixFileError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());

    let mut rows: Vec<Vec<ecsplit_core::Complex64>> = Vec::new();
    for (r, record) in reader.records().enumerate() {
        let record = record?;
        if record.iter().all(str::is_empty) {
            continue;
        }
        let row = record
            .iter()
            .enumerate()
            .map(|(c, text)| {
                parse_complex(text).ok_or_else(|| MatrixFileError::Entry {
                    row: r + 1,
                    col: c + 1,
                    text: text.to_string(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        if let Some(first) = rows.first() {
            if first.len() != row.len() {
                return Err(MatrixFileError::Ragged {
                    row: r + 1,
                    expected: first.len(),
                    found: row.len(),
                });
            }
        }
        rows.push(row);
    }
    let n = rows.len();
    if n == 0 {
        return Err(MatrixFileError::Empty);
    }
    if rows[0].len() != n {
        return Err(MatrixFileError::NotSquare {
            rows: n,
            cols: rows[0].len(),
        });
    }
    Ok(CMatrix::new(n, n, rows.into_iter().flatten().collect()).expect("checked square shape"))
}

pub fn write_matrix(path: &Path, m: &CMatrix) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_path(path)?;
    for i in 0..m.rows() {
        w.write_record(m.row(i).iter().map(|&z| format_complex(z)))?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_sumrate(path: &Path, table: &ExperimentTable) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(SUMRATE_HEADER)?;
    for r in &table.sumrate {
        w.write_record([
            fmt_real(r.snr_db),
            r.method.as_str().to_string(),
            fmt_real(r.mean_capacity_bits),
            fmt_real(r.stderr_capacity_bits),
            fmt_opt(r.mean_rho),
            fmt_opt(r.mean_sigma),
            fmt_opt(r.mean_projection_residual),
            r.frames_ok.to_string(),
            r.frames_failed.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_sweep(path: &Path, table: &ExperimentTable) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(SWEEP_HEADER)?;
    for s in &table.sweep {
        w.write_record([
            fmt_real(s.snr_db),
            s.frame.to_string(),
            fmt_real(s.alpha),
            fmt_real(s.sigma),
            fmt_real(s.rho),
            fmt_real(s.capacity_bits),
        ])?;
    }
    w.flush()?;
    Ok(())
}

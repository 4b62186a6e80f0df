//! Reading matrices and vectors from CSV or JSON files.
//!
//! CSV files hold one matrix row per line with comma-separated decimals and
//! no header. JSON files hold `{"rows": r, "cols": c, "data": [...]}` with
//! the entries in row-major order. The format is chosen by extension:
//! `.json` is JSON, anything else is CSV.

use std::fs;
use std::path::Path;

use lattice_kit::numerics::Matrix;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: file contains no matrix")]
    Empty { path: String },
    #[error("{path}: line {line} has {found} columns, expected {expected}")]
    Ragged {
        path: String,
        line: u64,
        expected: usize,
        found: usize,
    },
    #[error("{path}: line {line}, column {column}: `{token}` is not a number")]
    Token {
        path: String,
        line: u64,
        column: usize,
        token: String,
    },
    #[error("{path}: line {line}, column {column}: value is not finite")]
    NonFinite {
        path: String,
        line: u64,
        column: usize,
    },
    #[error("{path}: malformed CSV: {message}")]
    Csv { path: String, message: String },
    #[error("{path}: malformed JSON at line {line}, column {column}: {message}")]
    Json {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: rows × cols = {rows} × {cols} but data has {len} entries")]
    Shape {
        path: String,
        rows: usize,
        cols: usize,
        len: usize,
    },
    #[error("{path}: expected a vector, found a {rows} × {cols} matrix")]
    NotAVector {
        path: String,
        rows: usize,
        cols: usize,
    },
}

impl IngestError {
    pub fn code(&self) -> &'static str {
        match self {
            IngestError::Io { .. } => "io_error",
            IngestError::Empty { .. } => "empty_input",
            IngestError::Ragged { .. } => "ragged_rows",
            IngestError::Token { .. } => "invalid_number",
            IngestError::NonFinite { .. } => "non_finite",
            IngestError::Csv { .. } => "malformed_csv",
            IngestError::Json { .. } => "malformed_json",
            IngestError::Shape { .. } => "shape_mismatch",
            IngestError::NotAVector { .. } => "not_a_vector",
        }
    }
}

/// The JSON matrix layout, also used for matrices in result documents.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixDoc {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<f64>,
}

impl MatrixDoc {
    pub fn from_matrix(m: &Matrix) -> Self {
        Self {
            rows: m.rows(),
            cols: m.cols(),
            data: m.data().to_vec(),
        }
    }

    /// Rows given as vectors; an empty list becomes a 0 × 0 document.
    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        Self {
            rows: rows.len(),
            cols: rows.first().map_or(0, Vec::len),
            data: rows.iter().flatten().copied().collect(),
        }
    }

    pub fn row_vecs(&self) -> Vec<Vec<f64>> {
        if self.cols == 0 {
            return Vec::new();
        }
        self.data.chunks(self.cols).map(<[f64]>::to_vec).collect()
    }
}

pub fn ingest_matrix(path: &Path) -> Result<Matrix, IngestError> {
    let name = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|source| IngestError::Io {
        path: name.clone(),
        source,
    })?;
    let is_json = path
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("json"));
    if is_json {
        parse_json(&text, &name)
    } else {
        parse_csv(&text, &name)
    }
}

/// A `1 × n` or `n × 1` matrix read as a vector.
pub fn ingest_vector(path: &Path) -> Result<Vec<f64>, IngestError> {
    let m = ingest_matrix(path)?;
    if m.rows() == 1 || m.cols() == 1 {
        Ok(m.into_data())
    } else {
        Err(IngestError::NotAVector {
            path: path.display().to_string(),
            rows: m.rows(),
            cols: m.cols(),
        })
    }
}

pub fn parse_csv(text: &str, path: &str) -> Result<Matrix, IngestError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(text.as_bytes());
    let mut data = Vec::new();
    let mut cols = None;
    let mut rows = 0;
    for record in reader.records() {
        let record = record.map_err(|e| IngestError::Csv {
            path: path.to_string(),
            message: e.to_string(),
        })?;
        let line = record.position().map_or(0, |p| p.line());
        if record.iter().all(|f| f.trim().is_empty()) {
            continue;
        }
        let expected = *cols.get_or_insert(record.len());
        if record.len() != expected {
            return Err(IngestError::Ragged {
                path: path.to_string(),
                line,
                expected,
                found: record.len(),
            });
        }
        for (j, field) in record.iter().enumerate() {
            let token = field.trim();
            let value: f64 = token.parse().map_err(|_| IngestError::Token {
                path: path.to_string(),
                line,
                column: j + 1,
                token: token.to_string(),
            })?;
            if !value.is_finite() {
                return Err(IngestError::NonFinite {
                    path: path.to_string(),
                    line,
                    column: j + 1,
                });
            }
            data.push(value);
        }
        rows += 1;
    }
    let cols = cols.unwrap_or(0);
    if rows == 0 || cols == 0 {
        return Err(IngestError::Empty {
            path: path.to_string(),
        });
    }
    Ok(Matrix::new(rows, cols, data).expect("shape and values checked"))
}

pub fn parse_json(text: &str, path: &str) -> Result<Matrix, IngestError> {
    if text.trim().is_empty() {
        return Err(IngestError::Empty {
            path: path.to_string(),
        });
    }
    let doc: MatrixDoc = serde_json::from_str(text).map_err(|e| IngestError::Json {
        path: path.to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    if doc.rows == 0 || doc.cols == 0 {
        return Err(IngestError::Empty {
            path: path.to_string(),
        });
    }
    if doc.rows.checked_mul(doc.cols) != Some(doc.data.len()) {
        return Err(IngestError::Shape {
            path: path.to_string(),
            rows: doc.rows,
            cols: doc.cols,
            len: doc.data.len(),
        });
    }
    Ok(Matrix::new(doc.rows, doc.cols, doc.data).expect("shape checked, JSON numbers are finite"))
}

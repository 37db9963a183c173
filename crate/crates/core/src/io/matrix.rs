//! Feature matrix files.
//!
//! Binary container (little endian):
//!
//! ```text
//! magic  8 bytes  "FOAMTX01"
//! rows   u64
//! cols   u64
//! data   rows * cols f64, row-major
//! ```
//!
//! The text form holds one vector per line, values separated by whitespace
//! or commas. Blank lines and lines starting with `#` are ignored.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::matrix::Matrix;

pub const MATRIX_MAGIC: &[u8; 8] = b"FOAMTX01";

pub fn encode_matrix(m: &Matrix) -> Vec<u8> {
    let mut out = Vec::with_capacity(24 + 8 * m.as_slice().len());
    out.extend_from_slice(MATRIX_MAGIC);
    out.extend_from_slice(&(m.rows() as u64).to_le_bytes());
    out.extend_from_slice(&(m.cols() as u64).to_le_bytes());
    for v in m.as_slice() {
        out.extend_from_slice(&v.to_le_bytes());
    }
    out
}

pub fn decode_matrix(bytes: &[u8]) -> Result<Matrix> {
    if bytes.len() < 24 || &bytes[..8] != MATRIX_MAGIC {
        return Err(Error::CorruptHeader("missing matrix magic".into()));
    }
    let word = |i: usize| u64::from_le_bytes(bytes[i..i + 8].try_into().expect("8 bytes"));
    let (rows, cols) = (word(8) as usize, word(16) as usize);
    let expected = rows
        .checked_mul(cols)
        .and_then(|n| n.checked_mul(8))
        .ok_or_else(|| Error::CorruptHeader(format!("{rows}x{cols} overflows")))?;
    if bytes.len() - 24 != expected {
        return Err(Error::CorruptHeader(format!(
            "{rows}x{cols} matrix needs {expected} payload bytes, found {}",
            bytes.len() - 24
        )));
    }
    let data = bytes[24..]
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().expect("8 bytes")))
        .collect();
    Matrix::new(rows, cols, data)
}

pub fn write_matrix_bin(m: &Matrix, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, encode_matrix(m)).map_err(|e| Error::io(path, e))
}

pub fn read_matrix_bin(path: impl AsRef<Path>) -> Result<Matrix> {
    let path = path.as_ref();
    decode_matrix(&fs::read(path).map_err(|e| Error::io(path, e))?)
}

/// `location` prefixes parse errors, usually the file name.
pub fn parse_matrix_text(text: &str, location: &str) -> Result<Matrix> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: String| Error::Parse {
            location: format!("{location}:{}", i + 1),
            message,
        };
        let row = line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| err(format!("not a finite number: {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if let Some(first) = rows.first() {
            if first.len() != row.len() {
                return Err(err(format!(
                    "expected {} values, found {}",
                    first.len(),
                    row.len()
                )));
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::Parse {
            location: location.to_string(),
            message: "no vectors".into(),
        });
    }
    Matrix::from_rows(&rows)
}

pub fn format_matrix_text(m: &Matrix) -> String {
    let mut out = String::new();
    for row in m.iter_rows() {
        let line: Vec<String> = row.iter().map(|v| format!("{v:?}")).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

pub fn read_matrix_text(path: impl AsRef<Path>) -> Result<Matrix> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_matrix_text(&text, &path.display().to_string())
}

pub fn write_matrix_text(m: &Matrix, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, format_matrix_text(m)).map_err(|e| Error::io(path, e))
}

/// Reads either form, picking the binary one when the magic is present.
pub fn read_matrix(path: impl AsRef<Path>) -> Result<Matrix> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    if bytes.starts_with(MATRIX_MAGIC) {
        return decode_matrix(&bytes);
    }
    let text = String::from_utf8(bytes).map_err(|_| Error::Parse {
        location: path.display().to_string(),
        message: "neither a binary matrix nor UTF-8 text".into(),
    })?;
    parse_matrix_text(&text, &path.display().to_string())
}

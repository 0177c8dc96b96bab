//! Binary matrix files.
//!
//! Little-endian layout: the 8-byte magic `SKLRMAT1`, a `u32` field tag
//! (0 real, 1 complex), `u64` rows, `u64` cols, then the entries in row-major
//! order as `f64`, complex entries interleaved as re, im.

use std::fs;
use std::path::Path;

use crate::kernels::{Field, Matrix, Scalar};
use crate::{Error, Result};

pub const MAGIC: &[u8; 8] = b"SKLRMAT1";
const HEADER_LEN: usize = 28;

fn format_err(offset: usize, msg: impl Into<String>) -> Error {
    Error::Format {
        offset: offset as u64,
        msg: msg.into(),
    }
}

fn field_tag(field: Field) -> u32 {
    match field {
        Field::Real => 0,
        Field::Complex => 1,
    }
}

/// Parses a matrix file held in memory.
///
/// Real files load into either field; complex files only into complex.
pub fn parse_matrix_bytes<T: Scalar>(bytes: &[u8]) -> Result<Matrix<T>> {
    if bytes.len() < HEADER_LEN {
        return Err(format_err(bytes.len(), "truncated header"));
    }
    if &bytes[..8] != MAGIC {
        return Err(format_err(0, "bad magic"));
    }
    let tag = u32::from_le_bytes(bytes[8..12].try_into().expect("4 bytes"));
    let field = match tag {
        0 => Field::Real,
        1 => Field::Complex,
        t => return Err(format_err(8, format!("unknown field tag {t}"))),
    };
    if field == Field::Complex && T::FIELD == Field::Real {
        return Err(format_err(8, "complex file cannot be read as real"));
    }
    let rows = u64::from_le_bytes(bytes[12..20].try_into().expect("8 bytes"));
    let cols = u64::from_le_bytes(bytes[20..28].try_into().expect("8 bytes"));
    if rows == 0 || cols == 0 {
        return Err(format_err(12, format!("empty shape {rows}x{cols}")));
    }
    let per = if field == Field::Complex { 2 } else { 1 };
    let expected = rows
        .checked_mul(cols)
        .and_then(|c| c.checked_mul(8 * per))
        .filter(|&c| c <= usize::MAX as u64)
        .ok_or_else(|| format_err(12, "shape overflows"))? as usize;
    let payload = &bytes[HEADER_LEN..];
    if payload.len() < expected {
        return Err(format_err(bytes.len(), format!("payload has {} bytes, expected {expected}", payload.len())));
    }
    if payload.len() > expected {
        return Err(format_err(HEADER_LEN + expected, "trailing bytes after payload"));
    }
    let (rows, cols) = (rows as usize, cols as usize);
    let mut vals = payload
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().expect("8 bytes")));
    let mut row_major = Vec::with_capacity(rows * cols);
    for _ in 0..rows * cols {
        let re = vals.next().expect("length checked");
        let im = if per == 2 { vals.next().expect("length checked") } else { 0.0 };
        row_major.push(T::from_parts(re, im));
    }
    Matrix::from_row_major(rows, cols, &row_major)
}

/// Encodes a matrix in the file format.
pub fn matrix_to_bytes<T: Scalar>(a: &Matrix<T>) -> Vec<u8> {
    let (rows, cols) = a.shape();
    let per = if T::FIELD == Field::Complex { 2 } else { 1 };
    let mut out = Vec::with_capacity(HEADER_LEN + rows * cols * 8 * per);
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&field_tag(T::FIELD).to_le_bytes());
    out.extend_from_slice(&(rows as u64).to_le_bytes());
    out.extend_from_slice(&(cols as u64).to_le_bytes());
    for i in 0..rows {
        for j in 0..cols {
            let v = a[(i, j)];
            out.extend_from_slice(&v.re().to_le_bytes());
            if per == 2 {
                out.extend_from_slice(&v.im().to_le_bytes());
            }
        }
    }
    out
}

pub fn load_matrix_file<T: Scalar>(path: impl AsRef<Path>) -> Result<Matrix<T>> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    parse_matrix_bytes(&bytes)
}

pub fn write_matrix_file<T: Scalar>(path: impl AsRef<Path>, a: &Matrix<T>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, matrix_to_bytes(a)).map_err(|e| Error::io(path, e))
}

//! Plain-text code files.
//!
//! ```text
//! # comment lines start with '#'
//! n=7 k=4 kind=generator
//! 1000110
//! ...
//! ```
//!
//! With `kind=parity` the body holds `n-k` parity-check rows. Column `j` of a
//! row is coordinate `j+1`.

use std::fmt::Write as _;
use std::path::Path;

use super::code::BinaryLinearCode;
use super::matrix::BitMatrix;
use super::word::BitWord;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatrixKind {
    Generator,
    Parity,
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_header(line_no: usize, line: &str) -> Result<(usize, usize, MatrixKind)> {
    let (mut n, mut k, mut kind) = (None, None, None);
    for field in line.split_whitespace() {
        let (key, val) = field
            .split_once('=')
            .ok_or_else(|| parse_err(line_no, format!("expected key=value, got {field:?}")))?;
        let int = || {
            val.parse::<usize>()
                .map_err(|_| parse_err(line_no, format!("{key} must be a non-negative integer")))
        };
        match key {
            "n" => n = Some(int()?),
            "k" => k = Some(int()?),
            "kind" => {
                kind = Some(match val {
                    "generator" => MatrixKind::Generator,
                    "parity" => MatrixKind::Parity,
                    _ => return Err(parse_err(line_no, format!("unknown kind {val:?}"))),
                })
            }
            _ => return Err(parse_err(line_no, format!("unknown header field {key:?}"))),
        }
    }
    match (n, k, kind) {
        (Some(n), Some(k), Some(kind)) if k <= n => Ok((n, k, kind)),
        (Some(n), Some(k), Some(_)) => Err(parse_err(line_no, format!("k={k} exceeds n={n}"))),
        _ => Err(parse_err(line_no, "header needs n=, k= and kind=")),
    }
}

pub fn parse_code(text: &str) -> Result<BinaryLinearCode> {
    let mut header = None;
    let mut rows: Vec<BitWord> = Vec::new();
    let mut acc = BitMatrix::new(0);
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((n, k, kind)) = header else {
            let h = parse_header(line_no, line)?;
            acc = BitMatrix::new(h.0);
            header = Some(h);
            continue;
        };
        let expected = if kind == MatrixKind::Generator {
            k
        } else {
            n - k
        };
        if rows.len() == expected {
            return Err(parse_err(
                line_no,
                format!("more than the expected {expected} rows"),
            ));
        }
        if line.len() != n {
            return Err(parse_err(
                line_no,
                format!("row has length {}, expected n={n}", line.len()),
            ));
        }
        let row: BitWord = line
            .parse()
            .map_err(|e: Error| parse_err(line_no, e.to_string()))?;
        acc.push_row(row.clone());
        if acc.rank() < acc.num_rows() {
            return Err(parse_err(
                line_no,
                "row is linearly dependent on earlier rows (rank deficiency)",
            ));
        }
        rows.push(row);
    }
    let (n, k, kind) = header.ok_or_else(|| parse_err(last_line.max(1), "missing header line"))?;
    let expected = if kind == MatrixKind::Generator {
        k
    } else {
        n - k
    };
    if rows.len() != expected {
        return Err(parse_err(
            last_line,
            format!("found {} rows, expected {expected}", rows.len()),
        ));
    }
    match kind {
        MatrixKind::Generator => BinaryLinearCode::from_generator(n, rows),
        MatrixKind::Parity => BinaryLinearCode::from_parity_check(n, rows),
    }
}

pub fn format_code(code: &BinaryLinearCode) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "n={} k={} kind=generator", code.n(), code.k());
    for r in code.generator().rows() {
        let _ = writeln!(s, "{r}");
    }
    s
}

pub fn load_code(path: impl AsRef<Path>) -> Result<BinaryLinearCode> {
    parse_code(&std::fs::read_to_string(path)?)
}

pub fn save_code(code: &BinaryLinearCode, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, format_code(code))?;
    Ok(())
}

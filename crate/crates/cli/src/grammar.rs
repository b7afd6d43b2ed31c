//! Code grammar: `rm:m=<int>,r=<int>`, `hamming:m=<int>`, `simplex:m=<int>`, `file:<path>`.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use concount::gf2::{hamming_code, load_code, reed_muller, simplex_code};
use concount::{BinaryLinearCode, ConstraintSpec};

use crate::error::{CliError, CliResult};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CodeSpec {
    ReedMuller { m: usize, r: usize },
    Hamming { m: usize },
    Simplex { m: usize },
    File(PathBuf),
}

impl CodeSpec {
    pub fn build(&self) -> CliResult<BinaryLinearCode> {
        Ok(match self {
            CodeSpec::ReedMuller { m, r } => reed_muller(*m, *r as i64)?,
            CodeSpec::Hamming { m } => hamming_code(*m)?,
            CodeSpec::Simplex { m } => simplex_code(*m)?,
            CodeSpec::File(path) => load_code(path)?,
        })
    }
}

impl fmt::Display for CodeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodeSpec::ReedMuller { m, r } => write!(f, "rm:m={m},r={r}"),
            CodeSpec::Hamming { m } => write!(f, "hamming:m={m}"),
            CodeSpec::Simplex { m } => write!(f, "simplex:m={m}"),
            CodeSpec::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

fn params(text: &str, body: &str, names: &[&str]) -> CliResult<Vec<usize>> {
    let mut out = vec![None; names.len()];
    for part in body.split(',').filter(|p| !p.is_empty()) {
        let (k, v) = part.split_once('=').ok_or_else(|| {
            CliError::usage(format!("expected key=value in {text:?}, got {part:?}"))
        })?;
        let slot = names
            .iter()
            .position(|n| *n == k.trim())
            .ok_or_else(|| CliError::usage(format!("unknown parameter {k:?} in {text:?}")))?;
        if out[slot].is_some() {
            return Err(CliError::usage(format!(
                "parameter {k} repeated in {text:?}"
            )));
        }
        let v = v.trim().parse().map_err(|_| {
            CliError::usage(format!("{k} must be a non-negative integer in {text:?}"))
        })?;
        out[slot] = Some(v);
    }
    names
        .iter()
        .zip(out)
        .map(|(n, v)| {
            v.ok_or_else(|| CliError::usage(format!("missing parameter {n} in {text:?}")))
        })
        .collect()
}

impl FromStr for CodeSpec {
    type Err = CliError;

    fn from_str(text: &str) -> CliResult<Self> {
        let (kind, body) = text.split_once(':').unwrap_or((text, ""));
        match kind.trim() {
            "rm" => {
                let p = params(text, body, &["m", "r"])?;
                Ok(CodeSpec::ReedMuller { m: p[0], r: p[1] })
            }
            "hamming" => Ok(CodeSpec::Hamming {
                m: params(text, body, &["m"])?[0],
            }),
            "simplex" => Ok(CodeSpec::Simplex {
                m: params(text, body, &["m"])?[0],
            }),
            "file" if !body.is_empty() => Ok(CodeSpec::File(PathBuf::from(body))),
            "file" => Err(CliError::usage("file: needs a path")),
            other => Err(CliError::usage(format!(
                "unknown code kind {other:?} (expected rm, hamming, simplex or file)"
            ))),
        }
    }
}

pub fn parse_constraint(text: &str) -> CliResult<ConstraintSpec> {
    text.parse::<ConstraintSpec>()
        .map_err(|e| CliError::usage(format!("constraint {text:?}: {e}")))
}

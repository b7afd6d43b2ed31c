use thiserror::Error;

use crate::lp::LpStatus;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{what} = {value} exceeds the cap of {cap}")]
    CapExceeded {
        what: &'static str,
        value: usize,
        cap: usize,
    },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("structural error: {0}")]
    Structural(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// An identity that must hold exactly did not. Always a bug.
    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("solver stopped with status {0:?}")]
    Solver(LpStatus),

    #[error("certificate rejected: {0}")]
    CertificateRejected(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub(crate) fn cap(what: &'static str, value: usize, cap: usize) -> Self {
        Error::CapExceeded { what, value, cap }
    }
}

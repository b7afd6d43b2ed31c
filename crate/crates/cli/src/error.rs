use concount::{Error as CoreError, LpStatus};
use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_SOLVER: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Core(#[from] CoreError),

    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),

    #[error("cannot write csv: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Core(e) => match e {
                CoreError::InvalidParameter(_)
                | CoreError::Unsupported(_)
                | CoreError::Structural(_)
                | CoreError::Parse { .. }
                | CoreError::CertificateRejected(_) => EXIT_USAGE,
                CoreError::CapExceeded { .. } => EXIT_CAP,
                CoreError::Solver(LpStatus::IterationLimit) => EXIT_SOLVER,
                CoreError::Solver(_) | CoreError::Internal(_) | CoreError::Io(_) => EXIT_FAILED,
            },
            CliError::Io(_) | CliError::Csv(_) => EXIT_FAILED,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

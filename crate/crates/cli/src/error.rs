use thiserror::Error;

use flagmorse::{GeometryError, IndexError, RootSystemError};

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flag values; reported with the offending flag.
    #[error("invalid --{flag}: {reason}")]
    Usage { flag: &'static str, reason: String },
    #[error(transparent)]
    Index(#[from] IndexError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

impl CliError {
    pub fn usage(flag: &'static str, reason: impl ToString) -> Self {
        CliError::Usage {
            flag,
            reason: reason.to_string(),
        }
    }

    pub fn roots(flag: &'static str, e: RootSystemError) -> Self {
        CliError::usage(flag, e)
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage { .. } => 2,
            CliError::Index(IndexError::Roots(_) | IndexError::InvalidGamma) => 2,
            CliError::Geometry(GeometryError::UnknownSuite(_) | GeometryError::NotInM(_)) => 2,
            _ => 1,
        }
    }
}

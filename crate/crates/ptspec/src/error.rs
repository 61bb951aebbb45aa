use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// An input file or config describes an invalid object (not PSD, wrong
    /// trace, inconsistent dimensions, bad sweep parameters).
    #[error("invalid input: {0}")]
    Input(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: parse error at line {line}, column {column}: {message}")]
    Parse { path: PathBuf, line: usize, column: usize, message: String },

    /// Checkpoints from different configurations.
    #[error("cannot merge checkpoints: {0}")]
    Merge(String),

    /// Conflicting records for the same sample, or a damaged header.
    #[error("corrupt checkpoint {path}: {message}")]
    Corruption { path: PathBuf, message: String },

    /// A monitored or proven bound failed. `counterexample` names the
    /// persisted state when there is one.
    #[error("{message}")]
    Breach { message: String, counterexample: Option<PathBuf> },

    #[error(transparent)]
    Core(#[from] ptspec_core::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }

    /// Process exit status for the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Breach { .. } | Error::Core(ptspec_core::Error::Breach(_)) => 1,
            Error::Input(_) | Error::Merge(_) => 2,
            Error::Core(
                ptspec_core::Error::InvalidState { .. }
                | ptspec_core::Error::Shape { .. }
                | ptspec_core::Error::Argument(_)
                | ptspec_core::Error::Precondition(_),
            ) => 2,
            Error::Io { .. } => 3,
            Error::Parse { .. } | Error::Corruption { .. } => 4,
            Error::Core(_) => 5,
        }
    }
}

use alloc::string::String;
use core::fmt;

use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Which density-matrix invariant an input failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StateInvariant {
    Trace,
    PositiveSemidefinite,
    Shape,
}

impl fmt::Display for StateInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StateInvariant::Trace => "unit trace",
            StateInvariant::PositiveSemidefinite => "positive semidefinite",
            StateInvariant::Shape => "bipartite shape",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Shape { expected: String, found: String },

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {residual:e})")]
    NoConvergence { sweeps: usize, residual: f64 },

    #[error("density matrix violates the {invariant} invariant (margin {margin:e})")]
    InvalidState { invariant: StateInvariant, margin: f64 },

    #[error("singular expression: {0}")]
    Singular(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    /// A proven bound failed on a concrete input. Always a numerical or logic bug.
    #[error("proven property violated: {0}")]
    Breach(String),
}

impl Error {
    pub(crate) fn shape(expected: impl fmt::Display, found: impl fmt::Display) -> Self {
        use alloc::string::ToString;
        Error::Shape { expected: expected.to_string(), found: found.to_string() }
    }
}

//! Error type shared across the toolkit.

use thiserror::Error;

/// Errors produced by parsing, model validation and numerical evaluation.
#[derive(Debug, Error)]
pub enum Error {
    /// Invalid configuration, input file or model definition.
    #[error("configuration error: {0}")]
    Config(String),

    /// Configuration error tied to a specific line of an input file.
    #[error("configuration error: {path}:{line}: {msg}")]
    ConfigLine {
        path: String,
        line: usize,
        msg: String,
    },

    /// A query outside the valid domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Numerical failure (non-convergence, singular system, eigen failure).
    #[error("numerical error: {0}")]
    Numerical(String),

    /// Structural model failure (degenerate laminate, open periphery, zero stiffness).
    #[error("structural error: {0}")]
    Structural(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code for the CLI: 2 for configuration problems, 3 for
    /// numerical/structural failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::ConfigLine { .. } | Error::Io(_) => 2,
            Error::Domain(_) | Error::Numerical(_) | Error::Structural(_) => 3,
        }
    }
}

use std::path::PathBuf;

use thiserror::Error;

/// Errors surfaced by fallible library entry points.
///
/// Contract violations inside hot algorithm kernels (mismatched vector
/// lengths, unevaluated individuals) panic instead; they indicate caller
/// bugs, not recoverable conditions.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown problem '{name}'; valid names: {valid}")]
    UnknownProblem { name: String, valid: String },

    #[error("{path}:{line}: {message}")]
    FrontParse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("front must contain at least 2 points")]
    FrontTooSmall,

    #[error("{path}:{line}: {message}")]
    PlanParse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("invalid plan: {0}")]
    InvalidPlan(String),

    #[error("spread requires at least 2 obtained points")]
    SpreadTooFewPoints,

    #[error("spread is only defined for 2 objectives, got {0}")]
    SpreadUnsupportedObjectives(usize),

    #[error("invalid mutation setting '{0}'; expected 'static:<n>' or 'adaptive'")]
    InvalidMutationSetting(String),

    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub fn io(context: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io {
            context: context.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

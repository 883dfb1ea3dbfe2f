//! Error type shared across the toolkit.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum MeanError {
    /// The input tuple is outside the function's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Tuple length does not match the function's arity.
    #[error("arity error: expected {expected}, got {got}")]
    Arity { expected: String, got: usize },

    /// A generator inversion target left the declared bracket.
    #[error("bracket error: {0}")]
    Bracket(String),

    /// A declared hypothesis was violated on an observed trace.
    #[error("contract violation: {0}")]
    Contract(String),

    /// Rejection sampling never produced an admissible tuple.
    #[error("empty domain: no admissible sample found in the box")]
    EmptyDomain,

    /// Formula or number parsing failed.
    #[error("parse error at {position}: {message}")]
    Parse { position: usize, message: String },

    /// Construction of a function from invalid parts.
    #[error("invalid construction: {0}")]
    Construction(String),
}

impl MeanError {
    pub fn domain(msg: impl Into<String>) -> Self {
        MeanError::Domain(msg.into())
    }
}

use thiserror::Error;

use crate::numeric::SumResult;

pub type Result<T> = std::result::Result<T, QError>;

#[derive(Debug, Clone, Error)]
pub enum QError {
    /// The term cap was reached before the tail bound met the tolerance.
    #[error("no convergence after {} terms (tail bound {})", .partial.terms_used, .partial.tail_bound)]
    NonConvergence { partial: Box<SumResult> },

    /// A value left the domain of an operation (non-positive product factor,
    /// argument outside (0,1), non-finite term, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A q-gamma pole was hit; the message names the offending argument.
    #[error("pole: {0}")]
    Pole(String),

    /// Parameters violate the convergence condition of a template.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid precision context: {0}")]
    Context(String),
}

impl QError {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        QError::Domain(msg.into())
    }

    pub(crate) fn pole(msg: impl Into<String>) -> Self {
        QError::Pole(msg.into())
    }
}

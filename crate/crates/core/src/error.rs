use thiserror::Error;

/// Errors raised by the exterior-algebra routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("variance mismatch: {0}")]
    VarianceMismatch(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("wrong type: {0}")]
    WrongType(String),

    #[error("Lie algebra is not semisimple (Killing form is degenerate)")]
    NotSemisimple,

    #[error("form is not decomposable")]
    NotDecomposable,

    #[error("form is zero")]
    ZeroForm,

    #[error("odd dimension {0} where an even one is required")]
    OddDimension(usize),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),

    #[error("parse error at {position}: {message}")]
    Parse { position: String, message: String },

    #[error("unknown catalog entry `{0}`")]
    UnknownCatalog(String),
}

pub type Result<T> = std::result::Result<T, FormError>;

impl FormError {
    pub(crate) fn parse(position: impl Into<String>, message: impl Into<String>) -> Self {
        FormError::Parse {
            position: position.into(),
            message: message.into(),
        }
    }
}

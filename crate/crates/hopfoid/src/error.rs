use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarParseError {
    #[error("malformed scalar {0:?}")]
    Malformed(String),
    #[error("zero denominator in scalar {0:?}")]
    ZeroDenominator(String),
}

/// Problems with the shape or well-formedness of a structure, as opposed to
/// axiom failures (those go into reports).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructureError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("invalid structure: {0}")]
    Invalid(String),
    #[error("operands live over different base algebras")]
    BaseMismatch,
    #[error("{what} failed its axiom check: {first_failure}")]
    AxiomsFailed { what: String, first_failure: String },
    #[error("{0}")]
    Unsupported(String),
}

/// Errors from reading or validating structure files.
#[derive(Debug, Error)]
pub enum FileError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("at {path}: {message}")]
    Schema { path: String, message: String },
    #[error("at {path}: {source}")]
    Scalar {
        path: String,
        #[source]
        source: ScalarParseError,
    },
    #[error("dimension {dim} exceeds the limit {limit}")]
    TooLarge { dim: usize, limit: usize },
    #[error(transparent)]
    Structure(#[from] StructureError),
}

impl FileError {
    pub fn schema(path: impl Into<String>, message: impl Into<String>) -> Self {
        FileError::Schema { path: path.into(), message: message.into() }
    }
}

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JordanError {
    #[error("division by zero")]
    DivisionByZero,

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("operation not supported over {0}")]
    UnsupportedField(String),

    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("component {0} is not a 2-cocycle")]
    NotACocycle(usize),

    #[error("coordinates not representable in the given basis")]
    NotRepresentable,

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: duplicate product ({i},{j})")]
    DuplicateProduct { line: usize, i: usize, j: usize },

    #[error("instance too large: {0}")]
    InstanceTooLarge(String),

    #[error("resource limit exceeded: {0}")]
    ResourceExceeded(String),
}

pub type Result<T> = std::result::Result<T, JordanError>;

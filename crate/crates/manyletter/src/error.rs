use thiserror::Error;

/// Errors raised by construction and application of many-letter objects.
#[derive(Debug, Error)]
pub enum Error {
    #[error("letter-space dimension mismatch: expected {expected}, got {found}")]
    AlphabetMismatch { expected: usize, found: usize },

    #[error("letter index {index} out of range for dimension {dim}")]
    LetterOutOfRange { index: usize, dim: usize },

    #[error("letter {index} has norm {norm}, expected 1")]
    LetterNotNormalized { index: usize, norm: f64 },

    #[error("string of length {length} exceeds the truncation limit {l_max}")]
    TruncationOverflow { length: usize, l_max: usize },

    #[error("vector has norm {norm}, expected 1")]
    NotNormalized { norm: f64 },

    #[error("probabilities sum to {sum}, expected 1")]
    ProbabilitiesDoNotSum { sum: f64 },

    #[error("probability {value} is not strictly positive")]
    NonPositiveProbability { value: f64 },

    #[error("matrix is not Hermitian: max asymmetry {deviation}")]
    NotHermitian { deviation: f64 },

    #[error("matrix is not positive semidefinite: eigenvalue {eigenvalue}")]
    NotPositiveSemidefinite { eigenvalue: f64 },

    #[error("matrix has trace {trace}, expected {expected}")]
    BadTrace { trace: f64, expected: f64 },

    #[error("enumerating {count} strings exceeds the guard of {guard}")]
    EnumerationGuard { count: u128, guard: u128 },

    #[error("string length {length} is not a multiple of the block size {block}")]
    BlockAlignment { length: usize, block: usize },

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("malformed code stream: undecodable suffix starting at bit {position}")]
    MalformedCode { position: usize },

    #[error("support exceeds the dense-matrix guard: {dim} basis strings (limit {guard})")]
    SupportGuard { dim: usize, guard: usize },

    #[error("eigensolver failed to converge")]
    EigenFailure,

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

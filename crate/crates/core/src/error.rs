use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("invalid rational literal `{0}`")]
    Rational(String),
    #[error("invalid scalar literal `{0}`")]
    Scalar(String),
    #[error("{0}")]
    Other(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("unsupported division algebra dimension {0} (expected 1, 2, 4 or 8)")]
    UnsupportedK(u32),
    #[error("unknown variant `{0}`")]
    UnknownVariant(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("operator is not diagonalizable over the base field")]
    NotDiagonalizable,
    #[error("modular computations disagree between primes ({0} vs {1})")]
    ModularDisagreement(usize, usize),
    #[error("value has a denominator divisible by the modulus")]
    NotReducible,
    #[error("coframe system violates d^2 = 0 on generator {0}")]
    NotClosed(usize),
    #[error("coframe system is not a valid structure: {0}")]
    InvalidStructure(String),
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("missing parameter `{0}`")]
    MissingParameter(String),
    #[error("data integrity check failed for {0}")]
    DataIntegrity(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

pub type Result<T> = std::result::Result<T, GeomError>;

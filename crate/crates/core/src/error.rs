use thiserror::Error;

/// Every failure the library reports.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DunklError {
    #[error("partition length {len} exceeds the number of variables {n}")]
    LengthExceedsVariables { len: usize, n: usize },
    #[error("invalid ground set size {k}: {reason}")]
    InvalidGroundSet { k: usize, reason: String },
    #[error("index {index} out of range 1..={bound}")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("operands live in different rings: {0}")]
    RingMismatch(String),
    #[error("sector unavailable: {0}")]
    SectorUnavailable(String),
    #[error("Gram matrix at degree {k} is singular for parameters {params}")]
    SingularGram { k: usize, params: String },
    #[error("denominator vanishes: {0}")]
    SingularDenominator(String),
    #[error("parity mismatch: {0}")]
    ParityMismatch(String),
    #[error("zero diagonal entry at degree {0}")]
    SingularDiagonal(usize),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("sample values are not a polynomial of degree <= {degree} in N")]
    InterpolationInconsistent { degree: usize },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl DunklError {
    /// Stable machine-readable tag used by the CLI error JSON.
    pub fn kind(&self) -> &'static str {
        match self {
            DunklError::LengthExceedsVariables { .. } => "LengthExceedsVariables",
            DunklError::InvalidGroundSet { .. } => "InvalidGroundSet",
            DunklError::IndexOutOfRange { .. } => "IndexOutOfRange",
            DunklError::RingMismatch(_) => "RingMismatch",
            DunklError::SectorUnavailable(_) => "SectorUnavailable",
            DunklError::SingularGram { .. } => "SingularGram",
            DunklError::SingularDenominator(_) => "SingularDenominator",
            DunklError::ParityMismatch(_) => "ParityMismatch",
            DunklError::SingularDiagonal(_) => "SingularDiagonal",
            DunklError::ShapeMismatch(_) => "ShapeMismatch",
            DunklError::InterpolationInconsistent { .. } => "InterpolationInconsistent",
            DunklError::PreconditionViolated(_) => "PreconditionViolated",
            DunklError::Unsupported(_) => "Unsupported",
        }
    }
}

pub type Result<T> = std::result::Result<T, DunklError>;

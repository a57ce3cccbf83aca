use thiserror::Error;

/// Errors raised by the library. Basis labels in payloads are 1-based.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("algebra mismatch: expected dimension {expected}, found {found}")]
    AlgebraMismatch { expected: usize, found: usize },

    #[error("affine solve with zero slope")]
    ZeroSlope,

    #[error("triangularity violated: [Z{i},Z{j}] has a Z{k} component")]
    TriangularityViolation { i: usize, j: usize, k: usize },

    #[error("Jacobi identity fails on (Z{i},Z{j},Z{k})")]
    JacobiViolation { i: usize, j: usize, k: usize },

    #[error("index set inconsistent at step {step}: {reason}")]
    InconsistentIndexSet { step: usize, reason: String },

    #[error("section solve disturbed coordinate {label} at step {step} ({detail})")]
    SectionSolveInvariantViolation {
        step: usize,
        label: usize,
        detail: String,
    },

    #[error("Pfaffian of a matrix of odd size {0}")]
    OddSize(usize),

    #[error("covector is not in the generic layer (central coordinate vanishes)")]
    NotGenericLayer,

    #[error("algebra is not the Heisenberg algebra h3")]
    NotHeisenberg,

    #[error("quadrature budget exceeded: requested {requested:e}, achieved {achieved:e}")]
    QuadratureBudgetExceeded { requested: f64, achieved: f64 },

    #[error("evaluation outside the chart domain: {0}")]
    Domain(String),
}

impl Error {
    /// Whether the error reports a broken internal invariant rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::SectionSolveInvariantViolation { .. })
    }

    /// Stable machine-readable tag of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse(_) => "ParseError",
            Error::InvalidInput(_) => "InvalidInput",
            Error::ArityMismatch { .. } => "ArityMismatch",
            Error::AlgebraMismatch { .. } => "AlgebraMismatch",
            Error::ZeroSlope => "ZeroSlope",
            Error::TriangularityViolation { .. } => "TriangularityViolation",
            Error::JacobiViolation { .. } => "JacobiViolation",
            Error::InconsistentIndexSet { .. } => "InconsistentIndexSet",
            Error::SectionSolveInvariantViolation { .. } => "SectionSolveInvariantViolation",
            Error::OddSize(_) => "OddSize",
            Error::NotGenericLayer => "NotGenericLayer",
            Error::NotHeisenberg => "NotHeisenberg",
            Error::QuadratureBudgetExceeded { .. } => "QuadratureBudgetExceeded",
            Error::Domain(_) => "DomainError",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

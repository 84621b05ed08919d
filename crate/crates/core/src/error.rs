use thiserror::Error;

/// Errors raised across the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    /// The fractional auxiliary of a zone has no finite bound because every
    /// facility serving it may be closed at once.
    #[error("zone {zone}: inverse-denominator bound is unbounded (no facility is guaranteed open)")]
    UnboundedZ { zone: usize },

    #[error("enumeration too large: {what} is {size}, cap is {cap}")]
    EnumerationTooLarge { what: &'static str, size: u128, cap: u128 },

    #[error("the enumeration backend cannot complete continuous variable `{0}`")]
    UnsupportedModel(String),

    #[error("external solver failure: {0}")]
    ExternalSolverFailure(String),

    #[error("variable `{name}` has non-integral value {value}")]
    IntegralityViolation { name: String, value: f64 },

    #[error("objective mismatch: solver reported {reported}, recomputed {recomputed}")]
    ObjectiveMismatch { reported: f64, recomputed: f64 },

    #[error("solver returned no assignment (status {0})")]
    NoAssignment(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("squared penalty encodes equality constraints and cannot be paired with AT_MOST mode")]
    PenaltyModeMismatch,

    #[error("no feasible solution satisfies the requested condition")]
    EmptyFeasibleSet,

    #[error("MPS parse error at line {line}: {msg}")]
    Mps { line: usize, msg: String },

    #[error("solution file parse error: {0}")]
    SolutionFile(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

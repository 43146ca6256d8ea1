use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid step function: {0}")]
    InvalidStep(String),
    #[error("domain mismatch: {0} vs {1}")]
    DomainMismatch(String, String),
    #[error("invalid bounds: A = {a}, B = {b} (need A < 0 < B)")]
    InvalidBounds { a: String, b: String },
    #[error("member {index} leaves its bounds [{a}, {b}]")]
    OutOfBounds { index: usize, a: String, b: String },
    #[error("empty subset")]
    EmptySubset,
    #[error("subset mask {mask:#b} references members outside 1..={n}")]
    MaskOutOfRange { mask: u64, n: usize },
    #[error("order d = {d} out of range 1..={n}")]
    OrderOutOfRange { d: usize, n: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("member {index} is not two-valued with nonzero values ({reason})")]
    NotTwoValued { index: usize, reason: String },
    #[error("invalid chaos sum: {0}")]
    InvalidChaos(String),
    #[error("invalid trigonometric input: {0}")]
    InvalidTrig(String),
    #[error("quadrature did not reach tolerance {tol:e} within {panels} panels")]
    Quadrature { tol: f64, panels: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

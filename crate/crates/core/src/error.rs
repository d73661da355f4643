use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid Hessenberg function at index {index}: {reason}")]
    InvalidHess { index: usize, reason: String },

    #[error("invalid Dyck word at position {position}: {reason}")]
    InvalidWord { position: usize, reason: String },

    #[error("{what} = {value} outside supported range {min}..={max}")]
    OutOfRange { what: &'static str, value: usize, min: usize, max: usize },

    #[error("relation conditions fail: {0}")]
    RelationConditions(String),

    #[error("no reduction step: {0}")]
    NoStep(String),

    #[error("no base value for partition {0}")]
    MissingBase(String),

    #[error("reduction exceeded {0} relation applications")]
    StepLimit(u64),

    #[error("coefficient of {partition} is not a polynomial: {value}")]
    NotPolynomial { partition: String, value: String },

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("Hessenberg function {0} is not abelian")]
    NotAbelian(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("truncation mismatch: {0} vs {1}")]
    TruncationMismatch(usize, usize),
    #[error("codomain mismatch: {0}")]
    CodomainMismatch(String),
    #[error("budget exceeded while {what} (limit {limit})")]
    BudgetExceeded { what: String, limit: usize },
    #[error("exploration bound exceeded: {0}")]
    ExplorationBound(String),
    #[error("target is not flagged coskeletal (bound <= 2 required): {0}")]
    NotCoskeletal(String),
    #[error("certification failed: {0}")]
    Certification(String),
    #[error("not a cofibration: {0}")]
    NotCofibration(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("hypothesis {gate} fails: {witness}")]
    Hypothesis { gate: String, witness: String },
    #[error("integer overflow in exact arithmetic")]
    Overflow,
    #[error("config error: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn budget(what: impl Into<String>, limit: usize) -> Self {
        Error::BudgetExceeded { what: what.into(), limit }
    }
}

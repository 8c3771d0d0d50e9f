use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("the zero polynomial has no leading monomial")]
    ZeroPolynomial,

    #[error("structure constants violate the pre-Lie identity at basis triple ({0}, {1}, {2})")]
    NotPreLie(usize, usize, usize),

    #[error("letter index {index} out of range 1..={n}")]
    IndexOutOfRange { index: u64, n: usize },

    #[error("syntax error at offset {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("reduction exceeded the step limit of {0} rewrites")]
    StepLimit(u64),

    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("rule match violates its side condition: {0}")]
    SideCondition(String),

    #[error("malformed parameters: {0}")]
    Params(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

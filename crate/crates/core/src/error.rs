use thiserror::Error;

/// Location-tagged failure from one of the text grammars.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(position: usize, message: impl Into<String>) -> Self {
        Self {
            position,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("generating sequence is empty")]
    EmptySequence,

    #[error("block {index} of composition is not positive")]
    NonPositiveBlock { index: usize },

    #[error("graph order {order} exceeds the supported maximum of {max}")]
    TooLarge { order: usize, max: usize },

    #[error("graph is disconnected")]
    Disconnected,

    #[error("graph has no type-0 vertices")]
    NoTypeZero,

    #[error("invalid BZP sequence: {0}")]
    InvalidBzp(String),

    #[error("invalid FOP sequence: {0}")]
    InvalidFop(String),

    #[error("invalid signature: {0}")]
    InvalidSignature(String),

    #[error("vertex set {0}")]
    InvalidVertexSet(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("sequence is not usable for growth estimation: {0}")]
    InvalidSequence(String),

    #[error("matrix is not symmetric (entry ({row}, {col}) differs by {delta:e})")]
    NonSymmetric { row: usize, col: usize, delta: f64 },

    #[error("power iteration did not converge after {iterations} steps (estimate {estimate}, residual {residual:e})")]
    NotConverged {
        iterations: usize,
        estimate: f64,
        residual: f64,
    },

    #[error("no sign change found for polynomial {0}")]
    NoSignChange(String),

    #[error("no connected threshold graph with n = {n} and m = {m}")]
    Infeasible { n: usize, m: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

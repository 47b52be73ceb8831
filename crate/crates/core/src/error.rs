use thiserror::Error;

use crate::words::Generator;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at token {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("generator {symbol} is not available for p = {p}")]
    InvalidGenerator { symbol: Generator, p: u32 },

    #[error("p must be at least 2 (got {0})")]
    InvalidP(u32),

    #[error("operation needs p >= 4 (got {0})")]
    NeedsLargeP(u32),

    #[error("words live over different p ({left} vs {right})")]
    MismatchedP { left: u32, right: u32 },

    #[error("determinant condition knp + Dk + n - lm = 0 fails for these parameters")]
    DeterminantCondition,

    #[error("matrix is not in S_{p}: {reason}")]
    NotInSp { p: u32, reason: String },

    #[error("element violates both B_p inequalities")]
    NotInBp,

    /// `word` is a product of image generators carrying the input outside
    /// `B_p`; since every image element lies in `B_p`, the input is not in
    /// the image even though it may satisfy the inequalities itself.
    #[error("not in the image: multiplying by {word} on the left leaves B_p")]
    NotInImage { word: String },

    #[error("kappa descent stalled at kappa = {kappa}")]
    DescentStall { kappa: String },

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("malformed matrix: {0}")]
    MatrixFormat(String),

    #[error("malformed vector: {0}")]
    VectorFormat(String),

    #[error("json: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

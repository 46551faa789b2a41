use thiserror::Error;

use crate::group_action::PolyDiffForm;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("incompatible rings: {0} vs {1}")]
    IncompatibleRings(String, String),

    #[error("arity mismatch: expected {expected} values, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("variable index {index} out of range for a ring with {nvars} variables")]
    IndexOutOfRange { index: usize, nvars: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("singular matrix: generator {0} is not invertible")]
    SingularGenerator(usize),

    #[error("group not finite within cap {0}")]
    GroupNotFinite(usize),

    #[error("not invariant: {0}")]
    NotInvariant(String),

    #[error("not in subalgebra: normal form {0} still involves source variables")]
    NotInSubalgebra(String),

    #[error("cannot contract a function")]
    CannotContractFunction,

    #[error("form is not closed: d = {0}")]
    NotClosed(Box<PolyDiffForm>),

    #[error("not semi-basic: contraction with generator {index} is {contraction}")]
    NotSemiBasic { index: usize, contraction: String },

    #[error("not tangent: {0} does not preserve the relation ideal")]
    NotTangent(String),

    #[error("internal consistency: {0}")]
    Consistency(String),

    #[error("lift not found at bound {0}")]
    LiftNotFound(usize),

    #[error("pull not found at bound {0}")]
    PullNotFound(usize),

    #[error("orbit form violates syzygy compatibility: {0}")]
    SyzygyViolation(String),

    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },

    #[error("computation cancelled")]
    Cancelled,

    #[error("json: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("degree error: {0}")]
    Degree(String),
    #[error("degenerate 3-form: no induced metric")]
    Degenerate,
    #[error("invariant form is not definite on the algebra")]
    NonDefiniteForm,
    #[error("form is not invariant under the isotropy action")]
    NotInvariant,
    #[error("not a unit quaternion")]
    NonUnit,
    #[error("invalid parameters for case {case}: {reason}")]
    InvalidParams { case: String, reason: String },
    #[error("unknown case id: {0}")]
    UnknownCase(String),
    #[error("unsupported algebra: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

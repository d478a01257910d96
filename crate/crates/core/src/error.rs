use thiserror::Error;

/// Failure modes shared by every module. The CLI maps `Parse`/`InvalidSpec`
/// to exit code 2 and everything else to exit code 1.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("point {point:?} lies outside the domain")]
    Domain { point: Vec<f64> },
    #[error("set does not meet the domain in positive measure")]
    EmptyIntersection,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("degenerate set: {0}")]
    DegenerateSet(String),
    #[error("invalid exponent spec: {0}")]
    InvalidSpec(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("construction failed: {0}")]
    Construction(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub(crate) fn precondition(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}

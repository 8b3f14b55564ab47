use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("mismatch: {0}")]
    Mismatch(String),
    #[error("malformed graph: {0}")]
    Malformed(String),
    #[error("graph is not reduced: {0}")]
    NotReduced(String),
    #[error("label {0} not present")]
    LabelAbsent(String),
    #[error("label {0} is frozen")]
    Frozen(String),
    #[error("label {0} is not mutable: {1}")]
    NotMutable(String, String),
    #[error("move precondition violated: {0}")]
    Precondition(String),
    #[error("search budget exhausted: {0}")]
    Budget(String),
    #[error("polytope is unbounded")]
    Unbounded,
    #[error("arithmetic: {0}")]
    Arithmetic(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io: {0}")]
    Io(String),
}

impl Error {
    /// Process exit code used by the CLI: 3 for budget exhaustion, 2 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Budget(_) => 3,
            _ => 2,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

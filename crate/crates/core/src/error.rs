use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Failure categories. Each maps onto one process exit code of the CLI.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed or inconsistent input data.
    #[error("invalid input: {0}")]
    Invalid(String),
    /// A mathematical identity that must hold exactly did not.
    #[error("invariant violated: {0}")]
    Invariant(String),
    /// A configured size bound was exceeded.
    #[error("resource bound exceeded: {0}")]
    Bound(String),
    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }

    pub fn bound(msg: impl Into<String>) -> Self {
        Error::Bound(msg.into())
    }

    /// Exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Invalid(_) | Error::Io(_) => 2,
            Error::Invariant(_) => 3,
            Error::Bound(_) => 4,
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
        Error::Invalid(format!("json: {e}"))
    }
}

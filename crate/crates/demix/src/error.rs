use thiserror::Error;

/// Crate-wide error type.
///
/// The CLI maps variants to exit codes: `Config` and `Invalid` are
/// validation failures (exit 2), `Io` and `Data` are data failures
/// (exit 3), `Numerical` is a numerical failure (exit 4).
#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    /// Malformed input data; `line` is 1-based when the source is a file.
    #[error("data error at line {line}: {msg}")]
    Data { line: usize, msg: String },

    /// A precondition or argument contract was violated.
    #[error("invalid input: {0}")]
    Invalid(String),

    /// A configuration failed validation; lists the offending keys.
    #[error("invalid config: {0}")]
    Config(String),

    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub fn data(line: usize, msg: impl Into<String>) -> Self {
        Error::Data {
            line,
            msg: msg.into(),
        }
    }

    /// Process exit code for the CLI: 2 validation, 3 data, 4 numerical.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Invalid(_) | Error::Config(_) => 2,
            Error::Io(_) | Error::Data { .. } => 3,
            Error::Numerical(_) => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

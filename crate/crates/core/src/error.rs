use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("nonphysical state: {0}")]
    Domain(String),

    #[error("solution blew up at t = {time}: {reason}")]
    BlowUp { time: f64, reason: String },

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("zero error, order undefined")]
    ZeroError,

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("unknown problem `{0}`")]
    UnknownProblem(String),

    #[error("corrupt cache file {path}: {reason}")]
    CorruptCache { path: String, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }
}

use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed WAV: {0}")]
    MalformedWav(String),

    #[error("unsupported WAV encoding: {0}")]
    UnsupportedWav(String),

    #[error("truncated WAV data chunk: expected {expected} bytes, found {found}")]
    TruncatedWav { expected: usize, found: usize },

    #[error("label line {line}: {msg}")]
    Label { line: usize, msg: String },

    #[error("malformed HTK file: {0}")]
    Htk(String),

    #[error("malformed CSV (line {line}): {msg}")]
    Csv { line: usize, msg: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("zero-norm vector: {0}")]
    ZeroNorm(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

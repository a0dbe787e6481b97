use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Invalid caller-supplied value (coordinates, radius, dimensions...).
    #[error("invalid input: {0}")]
    Input(String),

    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("line {line}: {message}")]
    Row { line: usize, message: String },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("not enough negative cells: need {needed}, only {available} available (short by {})", needed - available)]
    Sampling { needed: usize, available: usize },

    #[error("fit error: {0}")]
    Fit(String),

    #[error("dataset error: {0}")]
    Dataset(String),

    #[error("missing embeddings for {} cell(s): {}", .0.len(), .0.join(", "))]
    MissingEmbeddings(Vec<String>),

    #[error("division error: {0}")]
    Division(String),

    #[error("area lookup failed: {0}")]
    Lookup(String),

    #[error("http error: {0}")]
    Http(String),

    #[error("{path}: {source}")]
    File {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub(crate) fn file(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::File {
            path: path.into(),
            source,
        }
    }
}

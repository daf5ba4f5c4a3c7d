use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("line {line}: {message}")]
    Line { line: usize, message: String },

    #[error("unknown level {0}")]
    UnknownLevel(String),

    #[error("empty text")]
    EmptyText,

    #[error("empty topic")]
    EmptyTopic,

    #[error("duplicate document id {0}")]
    DuplicateId(String),

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("cannot split by topic: {0}")]
    CannotSplit(String),

    #[error("text shorter than segment ({tokens} tokens < {segment})")]
    ShorterThanSegment { tokens: usize, segment: usize },

    #[error("text shorter than sample ({tokens} tokens < {sample})")]
    ShorterThanSample { tokens: usize, sample: usize },

    #[error("degenerate text: {0}")]
    DegenerateText(String),

    #[error("conllu sentence {sentence}: {message}")]
    Conllu { sentence: usize, message: String },

    #[error("degenerate labels: {0}")]
    DegenerateLabels(String),

    #[error("row width mismatch: expected {expected}, got {got}")]
    WidthMismatch { expected: usize, got: usize },

    #[error("empty vocabulary after filtering")]
    EmptyVocabulary,

    #[error("did not converge after {iterations} iterations (last max change {gap:e})")]
    NotConverged { iterations: usize, gap: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// True for failures of a numerical procedure rather than of the input data.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::NotConverged { .. })
    }
}

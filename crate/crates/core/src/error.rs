use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("invalid segment: {0}")]
    InvalidSegment(String),

    #[error("segments with different cuspidal lines cannot be combined here")]
    MixedLabels,

    #[error("empty multisegment")]
    EmptyMultisegment,

    #[error("segments are not linked")]
    NotLinked,

    #[error("out of range: {0}")]
    OutOfRange(String),

    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("internal consistency check failed: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(offset: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            offset,
            message: message.into(),
        }
    }
}

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid table: {0}")]
    InvalidTable(String),

    #[error("invalid observed distribution: {0}")]
    InvalidObserved(String),

    #[error("threshold {name} = {value} out of range: {reason}")]
    Threshold {
        name: &'static str,
        value: String,
        reason: &'static str,
    },

    #[error("invalid counts: {0}")]
    InvalidCounts(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{context}: {message}")]
    Parse { context: String, message: String },

    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(context: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            context: context.into(),
            message: message.into(),
        }
    }
}

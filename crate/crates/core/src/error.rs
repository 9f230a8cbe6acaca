//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Tensor or weight shapes are inconsistent. The message names both
    /// shapes involved.
    #[error("shape error: {0}")]
    Shape(String),

    /// An operation received an input too small to act on (e.g. pooling a
    /// one-pixel map).
    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    /// A requested architecture cannot be built (feature map collapses to
    /// zero, or a skip connection cannot line up).
    #[error("infeasible architecture: {0}")]
    InfeasibleArchitecture(String),

    /// A configuration value is outside its supported range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A model/image file does not conform to its format. `offset` is the
    /// byte position where decoding failed, when known.
    #[error("format error at byte {offset}: {message}")]
    Format { offset: usize, message: String },

    /// Metric computation was asked for an empty or non-positive sample set.
    #[error("measurement error: {0}")]
    Measurement(String),

    /// A dataset directory is missing, empty or otherwise unusable.
    #[error("dataset error: {0}")]
    Dataset(String),

    /// The layer graph contains something the engine cannot differentiate
    /// or execute.
    #[error("capability error: {0}")]
    Capability(String),

    /// Training diverged or was misconfigured.
    #[error("training error (epoch {epoch}): {message}")]
    Training { epoch: usize, message: String },

    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn shape(msg: impl Into<String>) -> Self {
        Error::Shape(msg.into())
    }

    pub fn format(offset: usize, msg: impl Into<String>) -> Self {
        Error::Format {
            offset,
            message: msg.into(),
        }
    }

    pub fn io(context: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io {
            context: context.into(),
            source,
        }
    }
}

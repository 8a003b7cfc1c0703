use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] hermicode_core::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("headers disagree on {field}: {left} vs {right}")]
    HeaderMismatch { field: &'static str, left: String, right: String },
    #[error("malformed input: {0}")]
    Format(String),
    #[error("{0}")]
    Usage(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }

    /// Whether the error stems from bad arguments rather than a failed run.
    pub fn is_usage(&self) -> bool {
        use hermicode_core::Error as C;
        match self {
            Error::Usage(_) | Error::HeaderMismatch { .. } => true,
            Error::Core(e) => matches!(
                e,
                C::UnsupportedField { .. } | C::OutOfRange(_) | C::Precondition(_) | C::SizeGuard { .. } | C::ElementOutOfRange(_)
            ),
            _ => false,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

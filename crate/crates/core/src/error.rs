use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or inconsistent input data.
    #[error("invalid input: {0}")]
    Input(String),
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("coefficient field mismatch: {0} vs {1}")]
    FieldMismatch(crate::exact::Field, crate::exact::Field),
    /// The requested computation is not available in this setting.
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

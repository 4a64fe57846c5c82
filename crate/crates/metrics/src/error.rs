use thiserror::Error;

#[derive(Debug, Error)]
pub enum MetricsError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("invalid reference image: {0}")]
    InvalidReference(String),

    #[error("image too small: {0}")]
    TooSmall(String),

    #[error("invalid value: {0}")]
    InvalidValue(String),
}

pub type MetricsResult<T> = Result<T, MetricsError>;

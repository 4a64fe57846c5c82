use thiserror::Error;

#[derive(Debug, Error)]
pub enum TomoError {
    #[error("grid too small: {0}")]
    GridTooSmall(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("operator has no nonzero entries")]
    ZeroOperator,

    #[error("requested {requested} element images but the phantom has only {available} ellipses")]
    TooManyElements { requested: usize, available: usize },

    #[error(transparent)]
    Core(#[from] fedtucker_core::CoreError),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type TomoResult<T> = Result<T, TomoError>;

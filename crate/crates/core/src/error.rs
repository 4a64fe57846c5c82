use thiserror::Error;

/// Errors produced by tensor containers and decomposition kernels.
#[derive(Debug, Error)]
pub enum CoreError {
    #[error("mode index {mode} out of range for order-{order} tensor")]
    ModeOutOfRange { mode: usize, order: usize },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("invalid shape: {0}")]
    InvalidShape(String),

    #[error("rank out of range: {0}")]
    RankOutOfRange(String),

    #[error("input contains non-finite values ({0})")]
    NonFinite(&'static str),

    #[error("matrix has fewer rows ({rows}) than columns ({cols})")]
    NotTall { rows: usize, cols: usize },

    #[error("empty input: {0}")]
    EmptyInput(&'static str),
}

pub type CoreResult<T> = Result<T, CoreError>;

use thiserror::Error;

/// Errors produced by the library.
///
/// `Usage` covers calls that are structurally wrong (mismatched orders,
/// a class that does not admit the requested operation); `Domain` covers
/// numeric inputs outside the region where the mathematics is defined.
#[derive(Debug, Error)]
pub enum WcoError {
    #[error("usage error: {0}")]
    Usage(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("quadrature error: {message} (radial nodes {radial}, angular nodes {angular}, polynomial degree {degree})")]
    Quadrature {
        message: String,
        radial: usize,
        angular: usize,
        degree: usize,
    },

    #[error("numeric error: {0}")]
    Numeric(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl WcoError {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        WcoError::Usage(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        WcoError::Domain(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, WcoError>;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    /// Walk weights outgrew the representable range.
    #[error("walk weight of order {order} exceeds 1e300; normalize the matrix (divide by its max modulus) and retry")]
    Scale { order: usize },

    #[error("no convergence after {iterations} iterations (residual {residual:e})")]
    Convergence {
        iterations: usize,
        residual: f64,
        /// Best singular value estimate reached, when one exists.
        best_sigma: Option<f64>,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("infeasible construction: {0}")]
    Infeasible(String),
}

impl Error {
    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}

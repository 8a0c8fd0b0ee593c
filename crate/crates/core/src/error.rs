use thiserror::Error;

/// Failure modes shared by every numerical routine in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum RotorError {
    #[error("{func}: argument out of domain ({detail})")]
    Domain { func: &'static str, detail: String },

    #[error("{func}: no convergence ({detail})")]
    Convergence { func: &'static str, detail: String },

    #[error("truncation: tail mass {tail:.3e} exceeds {limit:.1e}")]
    Truncation { tail: f64, limit: f64 },

    #[error("resolution: {0}")]
    Resolution(String),
}

impl RotorError {
    pub(crate) fn domain(func: &'static str, detail: impl Into<String>) -> Self {
        RotorError::Domain {
            func,
            detail: detail.into(),
        }
    }

    pub(crate) fn convergence(func: &'static str, detail: impl Into<String>) -> Self {
        RotorError::Convergence {
            func,
            detail: detail.into(),
        }
    }

    /// True for errors a caller may treat as "numerics gave up".
    pub fn is_convergence(&self) -> bool {
        matches!(
            self,
            RotorError::Convergence { .. } | RotorError::Truncation { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, RotorError>;

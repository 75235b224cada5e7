use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter is non-finite, out of range, or outside the supported regime.
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    /// A cost formula was evaluated outside its domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// An iterative method failed to converge or a search found no answer.
    #[error("numerical failure: {0}")]
    NumericalFailure(String),

    /// A Monte Carlo estimate was compared against a different model.
    #[error("estimate does not match the requested model: {0}")]
    Mismatch(String),

    #[error("unknown table id {0} (expected 1..=11)")]
    UnknownTable(u32),

    #[error("unknown figure id {0} (expected 1..=7)")]
    UnknownFigure(u32),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}

/// Rejects NaN, infinities and non-positive values.
pub(crate) fn require_positive(name: &'static str, value: f64) -> Result<f64> {
    if !value.is_finite() {
        return Err(Error::invalid(name, format!("must be finite, got {value}")));
    }
    if value <= 0.0 {
        return Err(Error::invalid(name, format!("must be > 0, got {value}")));
    }
    Ok(value)
}

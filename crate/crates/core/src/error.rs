use thiserror::Error;

use crate::series::SeriesOutcome;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Argument outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Result not representable in double precision, even in log space.
    #[error("overflow: {0}")]
    Overflow(String),

    /// The requested series does not converge at this argument.
    #[error("divergent series: {0}")]
    Divergence(String),

    /// A series ran out of terms (or precision) before meeting its policy.
    #[error("series did not converge: {what} (value {:e}, tail bound {:e})", partial.value, partial.tail_bound)]
    NotConverged { what: String, partial: SeriesOutcome },

    /// A quadrature or tail estimate missed its tolerance.
    #[error("accuracy target missed: {what} (value {value:e}, error estimate {estimate:e})")]
    Accuracy { what: String, value: f64, estimate: f64 },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

use alloc::string::String;

/// Errors raised by the numerical and simulation routines.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A parameter lies outside the domain of the operation.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// An iterative method stopped before reaching its tolerance.
    #[error(
        "{method} did not converge after {iterations} iterations (error estimate {estimate:e})"
    )]
    NonConvergence {
        method: &'static str,
        iterations: usize,
        estimate: f64,
    },

    /// A probability mass function does not sum to one.
    #[error("probability mass function sums to {0}, expected 1")]
    Unnormalized(f64),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    /// True for failures of a numerical method, as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::NonConvergence { .. })
    }
}

pub type Result<T, E = Error> = core::result::Result<T, E>;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Failures raised while building or transforming two-qubit states.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max |a_ij - conj(a_ji)| = {0:e})")]
    NotHermitian(f64),

    #[error("trace is {0}, expected 1")]
    NotUnitTrace(f64),

    #[error("state is not positive semidefinite (smallest eigenvalue {0:e})")]
    NotPositive(f64),

    #[error("filter annihilates the state (success probability {0:e})")]
    DegenerateFilter(f64),

    #[error("negative outcome probability {0:e}")]
    NegativeProbability(f64),

    #[error("parameter `{param}` out of domain: {reason}")]
    Domain { param: String, reason: String },

    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
}

impl Error {
    pub(crate) fn domain(param: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Domain {
            param: param.into(),
            reason: reason.into(),
        }
    }
}

use thiserror::Error;

/// Errors surfaced by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument violates an operation's precondition.
    #[error("domain error: {0}")]
    Domain(String),

    /// Adaptive quadrature hit its refinement cap before reaching the requested tolerance.
    #[error("quadrature did not converge: estimate {estimate:e}, error bound {error_bound:e} (requested {tolerance:e})")]
    Accuracy {
        estimate: f64,
        error_bound: f64,
        tolerance: f64,
    },

    /// The function is eventually negative, so A(f) is infinite.
    #[error("function is negative at infinity (leading coefficient {leading:e})")]
    NegativeAtInfinity { leading: f64 },

    /// A procedure that should always succeed on its validated range did not.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

use num_complex::Complex64;

use crate::eval::EvalResult;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("{function} has a pole at {at}")]
    Pole {
        function: &'static str,
        at: Complex64,
    },

    #[error("argument outside the domain: {0}")]
    Domain(String),

    #[error("inadmissible parameter: {0}")]
    Parameter(String),

    /// The partial result is kept so that callers can still report it.
    #[error("{what} did not converge after {} terms (partial value {})", partial.terms_used, partial.value)]
    Convergence {
        what: &'static str,
        partial: Box<EvalResult>,
    },

    #[error("contour quadrature failed: {0}")]
    Contour(String),

    #[error("non-finite {0}")]
    NonFinite(&'static str),
}

impl Error {
    pub(crate) fn convergence(what: &'static str, partial: EvalResult) -> Self {
        Error::Convergence {
            what,
            partial: Box::new(partial),
        }
    }
}

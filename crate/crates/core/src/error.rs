use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// `c` is zero or a negative integer, so the recurrence divides by zero.
    #[error("invalid c = {0}: c must not be zero or a negative integer")]
    InvalidC(String),

    /// An argument lies outside the region where the operation is defined.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("no convergence after {terms} terms: tail bound {tail_bound:e} exceeds tolerance {tol:e}")]
    NoConvergence { terms: usize, tail_bound: f64, tol: f64 },

    #[error("quadrature failed: error estimate {estimate:e} exceeds {target:e} after {panels} panels")]
    QuadratureFailure { estimate: f64, target: f64, panels: usize },

    /// Exact-mode operations refuse degrees above [`crate::series::EXACT_DEGREE_CAP`].
    #[error("degree {degree} exceeds the exact-mode cap of {cap}")]
    DegreeTooLarge { degree: usize, cap: usize },

    #[error("cannot parse {0:?} as a number")]
    Parse(String),
}

#![no_std]

//! Gauss hypergeometric series and Euler's transformation.
//!
//! The crate evaluates
//!
//! ```text
//! s = 1 + ab/(1·c) x + ab(a+1)(b+1)/(1·2·c(c+1)) x² + …
//! ```
//!
//! by its coefficient recurrence, evaluates the transformed representation
//! `s = (1-x)^(c-a-b) · z` where `z` carries the parameters `(c-a, c-b, c)`,
//! and checks the identities that follow from the transformation: the
//! hypergeometric differential equation on truncated series, the binomial
//! "character" reflections, a three-series theorem, and closed forms for the
//! Poisson-kernel integrals `∫ cos(iφ) / (1 + a² - 2a cos φ)^(n+1) dφ`.
//!
//! Every value is a [`Scalar`]: either an exact rational or an `f64`. Exact
//! inputs stay exact wherever the mathematics allows it, which is how the
//! polynomial (terminating) cases and the binomial identities are checked
//! without tolerance.
//!
//! The crate is `no_std` and only needs `alloc`. IO, the command line and
//! report formats live in the `hyperxform` crate.

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod binom;
mod dd;
pub mod error;
pub mod integrals;
pub mod quadrature;
pub mod scalar;
pub mod series;
pub mod transform;

pub use binom::{binom_char, reflect_char, BinomChar};
pub use error::{Error, Result};
pub use scalar::{Kind, Scalar};
pub use series::{
    coefficients, eval_series, ode_residual, operator_identity_residual, substitution_residual,
    termination_index, CoefficientList, EvalPoint, HypergeometricParams, OdeResidual,
    SeriesEvaluation,
};
pub use transform::{
    euler_transform_params, eval_transformed, select_representation, triple_sums,
    verify_triple_relations, Representation, TransformedParams, TripleParams, TripleSums,
};

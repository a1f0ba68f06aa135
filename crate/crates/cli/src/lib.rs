//! Command-line front end for `hyperxform-core`.
//!
//! Three subcommands build a [`Report`]:
//!
//! * `eval` sums the series directly and through Euler's transformation and
//!   reports both values, their difference and the representation the
//!   selector prefers.
//! * `verify` runs the built-in identity grids (`ode`, `triple`,
//!   `integrals`, `binom`, `transform` or `all`).
//! * `bench` sweeps a parameter grid and records how many terms each
//!   representation needs.
//!
//! Exit codes: 0 pass, 1 identity failure, 2 domain error, 3 no convergence.

pub mod bench;
pub mod config;
pub mod eval;
pub mod grid;
pub mod report;
pub mod verify;

pub use config::{Mode, OutputFormat, RunConfig};
pub use report::{Report, Status};

use hyperxform_core::Error;

pub const EXIT_OK: u8 = 0;
pub const EXIT_IDENTITY: u8 = 1;
pub const EXIT_DOMAIN: u8 = 2;
pub const EXIT_NO_CONVERGENCE: u8 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_DOMAIN,
            CliError::Core(e) => exit_code(e),
        }
    }
}

/// Exit code for a library error.
pub fn exit_code(err: &Error) -> u8 {
    match err {
        Error::NoConvergence { .. } | Error::QuadratureFailure { .. } => EXIT_NO_CONVERGENCE,
        Error::InvalidC(_) | Error::Domain(_) | Error::DegreeTooLarge { .. } | Error::Parse(_) => EXIT_DOMAIN,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn error_codes() {
        assert_eq!(exit_code(&Error::InvalidC("-1".into())), 2);
        assert_eq!(exit_code(&Error::Parse("x".into())), 2);
        assert_eq!(exit_code(&Error::NoConvergence { terms: 1, tail_bound: 1.0, tol: 0.1 }), 3);
        assert_eq!(CliError::Usage("bad".into()).exit_code(), 2);
    }
}

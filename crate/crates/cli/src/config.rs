use std::fmt;
use std::str::FromStr;

use hyperxform_core::Kind;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    Exact,
    #[default]
    Float,
}

impl Mode {
    pub fn kind(self) -> Kind {
        match self {
            Mode::Exact => Kind::Exact,
            Mode::Float => Kind::Float,
        }
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact" => Ok(Mode::Exact),
            "float" => Ok(Mode::Float),
            other => Err(format!("unknown mode {other:?}, expected exact or float")),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Exact => "exact",
            Mode::Float => "float",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
    Text,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "text" => Ok(OutputFormat::Text),
            other => Err(format!("unknown output format {other:?}, expected json, csv or text")),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Json => "json",
            OutputFormat::Csv => "csv",
            OutputFormat::Text => "text",
        })
    }
}

pub const DEFAULT_TOL: f64 = 1e-12;
pub const DEFAULT_MAX_TERMS: usize = 10_000;

/// Settings shared by every subcommand.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunConfig {
    pub mode: Mode,
    /// Series truncation tolerance. `verify` also uses it as a floor for
    /// each identity's acceptance threshold.
    pub tol: f64,
    pub max_terms: usize,
    pub output: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { mode: Mode::Float, tol: DEFAULT_TOL, max_terms: DEFAULT_MAX_TERMS, output: OutputFormat::Json }
    }
}

impl RunConfig {
    pub fn new(mode: Mode, tol: f64, max_terms: usize, output: OutputFormat) -> Result<Self, CliError> {
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(CliError::Usage(format!("--tol must be positive, got {tol}")));
        }
        if max_terms == 0 {
            return Err(CliError::Usage("--max-terms must be at least 1".into()));
        }
        Ok(RunConfig { mode, tol, max_terms, output })
    }
}

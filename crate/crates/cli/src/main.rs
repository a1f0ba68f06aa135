use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hyperxform::bench::cmd_bench;
use hyperxform::config::{DEFAULT_MAX_TERMS, DEFAULT_TOL};
use hyperxform::eval::cmd_eval;
use hyperxform::grid::Grid;
use hyperxform::verify::{cmd_verify, Suite};
use hyperxform::{Mode, OutputFormat, Report, RunConfig};

#[derive(Parser)]
#[command(name = "hyperxform", version)]
#[command(about = "Hypergeometric series, Euler's transformation and the identities built on it")]
struct Cli {
    #[command(flatten)]
    common: Common,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Arithmetic: exact rationals or f64
    #[arg(long, global = true, default_value_t = Mode::Float)]
    mode: Mode,

    /// Series truncation tolerance; also the floor of every verify threshold
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    tol: f64,

    /// Largest number of terms summed before giving up
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_TERMS)]
    max_terms: usize,

    #[arg(long, global = true, default_value_t = OutputFormat::Json)]
    output: OutputFormat,
}

#[derive(Subcommand)]
enum Command {
    /// Sum the series directly and through the transformation
    #[command(allow_negative_numbers = true)]
    Eval {
        #[arg(short)]
        a: String,
        #[arg(short)]
        b: String,
        #[arg(short)]
        c: String,
        #[arg(short)]
        x: String,
    },
    /// Run a built-in identity suite: ode, triple, integrals, binom, transform or all
    Verify {
        #[arg(default_value_t = Suite::All)]
        suite: Suite,
    },
    /// Count terms for both representations over a grid
    Bench {
        /// Grid such as "a=3,1/2;b=1;c=2;x=0.1,0.9"
        #[arg(long, allow_hyphen_values = true)]
        grid: Option<String>,
    },
}

fn run(cli: Cli) -> Result<Report, hyperxform::CliError> {
    let c = cli.common;
    let config = RunConfig::new(c.mode, c.tol, c.max_terms, c.output)?;
    Ok(match cli.command {
        Command::Eval { a, b, c, x } => cmd_eval(&a, &b, &c, &x, &config),
        Command::Verify { suite } => cmd_verify(suite, &config),
        Command::Bench { grid } => {
            let grid = match grid {
                Some(text) => Grid::parse(&text)?,
                None => Grid::default(),
            };
            cmd_bench(&grid, &config)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let output = cli.common.output;
    match run(cli) {
        Ok(report) => {
            let rendered = report.render(output);
            let _ = std::io::stdout().write_all(rendered.as_bytes());
            if let Some(err) = &report.error {
                eprintln!("hyperxform: {err}");
            }
            ExitCode::from(report.exit_code)
        }
        Err(err) => {
            eprintln!("hyperxform: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}

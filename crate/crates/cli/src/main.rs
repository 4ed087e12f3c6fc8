//! `qrm`: command-line frontend for qudit quantum Reed-Muller codes.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error,
//! 3 capacity error.

mod commands;
mod figure;
mod output;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qrm_core::Method;

pub(crate) const MAX_D: u32 = 17;

#[derive(Parser, Debug)]
#[command(
    name = "qrm",
    version,
    about = "Qudit quantum Reed-Muller codes and magic state distillation"
)]
struct Cli {
    /// Upper bound on worker threads for the enumeration loops.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print code parameters and generator counts.
    CodeInfo {
        #[arg(long)]
        d: u32,
        /// Polynomial degree; defaults to the largest transversal degree.
        #[arg(long)]
        r: Option<u32>,
        #[arg(long, value_enum, default_value_t = InfoFormat::Text)]
        format: InfoFormat,
    },
    /// Run the exact transversality, distance and gate checks.
    Verify {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        r: Option<u32>,
        #[arg(long, default_value_t = 1)]
        mu: u32,
    },
    /// Output error and acceptance probability over a grid of input errors.
    Distill {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        r: Option<u32>,
        /// Comma-separated input error rates.
        #[arg(long, value_delimiter = ',', conflicts_with = "eps_grid")]
        eps: Vec<f64>,
        /// Log-spaced grid `LO:HI:COUNT`.
        #[arg(long)]
        eps_grid: Option<String>,
        #[arg(long, default_value = "auto", value_parser = parse_method)]
        method: Method,
        #[arg(long)]
        output: Option<String>,
        /// `json` writes the accepted-error enumerator instead of the sweep.
        #[arg(long, value_enum, default_value_t = DataFormat::Csv)]
        format: DataFormat,
    },
    /// Distillation thresholds at the largest transversal degree.
    Threshold {
        #[arg(long, value_delimiter = ',', required = true)]
        d: Vec<u32>,
        #[arg(long, default_value_t = qrm_core::distill::DEFAULT_THRESHOLD_TOL)]
        tol: f64,
        #[arg(long, default_value = "auto", value_parser = parse_method)]
        method: Method,
        #[arg(long)]
        output: Option<String>,
    },
    /// Data behind the γ and threshold plots.
    Figure {
        #[arg(value_enum)]
        which: Figure,
        #[arg(long)]
        output: Option<String>,
        /// Also render a simple SVG chart to this path.
        #[arg(long)]
        svg: Option<String>,
        #[arg(long, default_value_t = qrm_core::distill::DEFAULT_THRESHOLD_TOL)]
        tol: f64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub(crate) enum InfoFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub(crate) enum DataFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub(crate) enum Figure {
    #[value(name = "1a")]
    GammaSmall,
    #[value(name = "1b")]
    GammaLarge,
    #[value(name = "1c")]
    Thresholds,
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse().map_err(|e: qrm_core::Error| e.to_string())
}

/// An error carrying the process exit code.
#[derive(Debug)]
pub(crate) struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }

    pub fn verification(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<qrm_core::Error> for Failure {
    fn from(e: qrm_core::Error) -> Self {
        use qrm_core::Error as E;
        let code = match e {
            E::Capacity { .. } => 3,
            E::NotPrime(_) | E::UnsupportedDimension(_) | E::DegreeOutOfRange { .. } | E::Parameter(_) => 2,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            code: 1,
            message: e.to_string(),
        }
    }
}

pub(crate) type CliResult<T = ()> = Result<T, Failure>;

fn run(cli: Cli) -> CliResult {
    if let Some(threads) = cli.threads {
        if threads == 0 {
            return Err(Failure::usage("--threads must be at least 1"));
        }
        qrm_core::exec::configure_threads(threads);
    }
    match cli.command {
        Command::CodeInfo { d, r, format } => commands::code_info(d, r, format),
        Command::Verify { d, r, mu } => commands::verify(d, r, mu),
        Command::Distill {
            d,
            r,
            eps,
            eps_grid,
            method,
            output,
            format,
        } => commands::distill(d, r, &eps, eps_grid.as_deref(), method, output.as_deref(), format),
        Command::Threshold {
            d,
            tol,
            method,
            output,
        } => commands::threshold(&d, tol, method, output.as_deref()),
        Command::Figure {
            which,
            output,
            svg,
            tol,
        } => figure::run(which, output.as_deref(), svg.as_deref(), tol),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

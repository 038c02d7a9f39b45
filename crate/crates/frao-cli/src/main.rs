//! `frao` — compute Fisher-Rao distances, bounds, curves, and minimax
//! centers for multivariate normal distributions from the command line.
//!
//! Exit codes: 0 success, 1 benchmark check failure, 2 invalid input
//! (flags, JSON, shapes), 3 computation precondition failure (e.g. the
//! same-covariance method on a pair with different covariances). Every
//! failure prints a single `error: ...` line on stderr.

mod bench;
mod commands;
mod input;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

/// A CLI failure: what to print and which exit code to use.
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    /// Invalid input: flags, files, JSON, shapes (exit 2).
    pub fn input(message: impl Into<String>) -> CliError {
        CliError {
            code: 2,
            message: message.into(),
        }
    }

    /// A computation refused its input (exit 3).
    pub fn compute(message: impl Into<String>) -> CliError {
        CliError {
            code: 3,
            message: message.into(),
        }
    }
}

impl From<frao::Error> for CliError {
    fn from(e: frao::Error) -> CliError {
        CliError::compute(e.to_string())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Parser)]
#[command(
    name = "frao",
    version,
    about = "Fisher-Rao distances, bounds, geodesic curves, and minimax centers for Gaussians"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    /// Input JSON file; reads stdin when omitted or `-`.
    /// Shape: {"pairs":[{"n1":{"mean":[...],"cov":[[...]]},"n2":{...}}]}
    /// for pair commands, {"set":[{"mean":...,"cov":...},...]} for set
    /// commands.
    #[arg(long, global = true)]
    input: Option<PathBuf>,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Output format (the curve command always emits CSV).
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,

    /// Segment/iteration/sample count: segments for approx and bench,
    /// iterations for seb, samples for curve.
    #[arg(long = "T", default_value_t = 1000, global = true)]
    t: usize,

    /// Curve families, comma-separated (lambda, mixture, exponential,
    /// em-mid, co, univariate-fr). Default: the five multivariate families.
    #[arg(long, global = true, value_delimiter = ',')]
    curves: Option<Vec<String>>,

    /// Scale of the symmetric-space metric for the killing method.
    #[arg(long, default_value_t = 1.0, global = true)]
    kappa: f64,

    /// Seed for seeded commands (k-center start, bench sampling).
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
}

#[derive(Subcommand)]
enum Cmd {
    /// One scalar distance or bound per input pair.
    Dist {
        /// co | spc | jeffreys | mahalanobis-spd | same-cov | same-mean |
        /// univariate | killing | hilbert | siegel
        #[arg(long)]
        method: String,
    },
    /// Full bound-and-approximation report per input pair.
    Approx,
    /// Sample one curve between a single input pair as plot-ready CSV.
    Curve,
    /// Smallest enclosing Fisher-Rao ball of the input set.
    Seb,
    /// Greedy farthest-first k-center clustering of the input set.
    Kcenter {
        /// Number of clusters.
        #[arg(long)]
        k: usize,
    },
    /// Prebuilt suites: examples | kappa-table | tsweep.
    Bench { suite: String },
}

fn run(cli: Cli) -> Result<(), CliError> {
    let rendered = match &cli.command {
        Cmd::Dist { method } => {
            let pairs = input::read_pairs(cli.input.as_deref())?;
            commands::dist(&pairs, method, cli.kappa, cli.format)?
        }
        Cmd::Approx => {
            let pairs = input::read_pairs(cli.input.as_deref())?;
            commands::approx(&pairs, cli.t, &commands::curve_kinds(cli.curves.as_deref())?, cli.format)?
        }
        Cmd::Curve => {
            let pairs = input::read_pairs(cli.input.as_deref())?;
            commands::curve(&pairs, cli.t, &commands::curve_kinds(cli.curves.as_deref())?)?
        }
        Cmd::Seb => {
            let set = input::read_set(cli.input.as_deref())?;
            commands::seb(&set, cli.t, cli.format)?
        }
        Cmd::Kcenter { k } => {
            let set = input::read_set(cli.input.as_deref())?;
            commands::kcenter(&set, *k, cli.seed, cli.format)?
        }
        Cmd::Bench { suite } => {
            // write the table before failing, so a failed run still shows
            // its numbers
            let (table, failures) = bench::run(suite, cli.t, cli.seed)?;
            write_output(cli.out.as_deref(), &table)?;
            return if failures.is_empty() {
                Ok(())
            } else {
                Err(CliError {
                    code: 1,
                    message: format!(
                        "{} bench check(s) failed: {}",
                        failures.len(),
                        failures.join("; ")
                    ),
                })
            };
        }
    };
    write_output(cli.out.as_deref(), &rendered)
}

fn write_output(path: Option<&Path>, rendered: &str) -> Result<(), CliError> {
    match path {
        Some(path) => std::fs::write(path, rendered)
            .map_err(|e| CliError::input(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{rendered}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            // clap's rendering is multi-line; keep the first line and the
            // machine-parseable prefix
            let text = e.to_string();
            let first = text.lines().next().unwrap_or("invalid arguments");
            eprintln!("{}", first.trim());
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

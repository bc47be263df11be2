//! Command-line front end for the two-qubit concurrence library.
//!
//! Subcommands: `measure` (JSON state → JSON report), `sweep` (closed-form
//! grids → CSV), `compare` (rank-3 formula vs Wootters vs convex roof) and
//! `selftest` (embedded invariant corpus).
//!
//! Exit codes: 0 ok, 1 selftest failure, 2 input error, 3 numerical
//! invariant failure, 4 IO error.

mod compare;
mod report;
mod selftest;
mod sweep;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use concurrence::Error;

pub const EXIT_SELFTEST: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_INVARIANT: u8 = 3;
pub const EXIT_IO: u8 = 4;

/// A subcommand failure carrying its process exit code.
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }

    pub fn io(message: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_IO,
            message: message.into(),
        }
    }

    pub fn selftest(message: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_SELFTEST,
            message: message.into(),
        }
    }
}

/// Write a line to standard output. A closed pipe (e.g. `concurrence … |
/// head`) is treated as a successful early exit, not an error.
pub fn emit_line(text: &str) -> Result<(), Failure> {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    match writeln!(out, "{text}").and_then(|()| out.flush()) {
        Ok(()) => Ok(()),
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        Err(e) => Err(Failure::io(format!("standard output: {e}"))),
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Failure {
        let code = match err {
            Error::InvariantViolation(_)
            | Error::ConvergenceFailure(_)
            | Error::NegativeSpectrum(_)
            | Error::NonOrthonormalCoefficients => EXIT_INVARIANT,
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            message: err.to_string(),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "concurrence",
    version,
    about = "Two-qubit entanglement measures: closed forms, rank-3 mixtures, and a convex-roof oracle"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate every applicable measure for a JSON-described state
    Measure(MeasureArgs),
    /// Write a CSV grid of the symmetric-case closed form
    Sweep(SweepArgs),
    /// Compare the rank-3 formula against the Wootters and convex-roof oracles
    Compare(CompareArgs),
    /// Run the embedded invariant corpus and report per-group results
    Selftest,
}

#[derive(Args)]
pub struct MeasureArgs {
    /// Path to a JSON state description, or '-' for standard input
    #[arg(long)]
    pub state: String,
    /// Seed for the convex-roof oracle
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum SweepMode {
    /// alpha × alpha' surface at fixed p (columns alpha,alpha_p,x,c_squared)
    Alpha,
    /// p × X surface; p sweeps [0,1], X sweeps the given range (columns p,x,c_squared)
    Xp,
}

#[derive(Args)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    pub mode: SweepMode,
    /// Fixed component probability (alpha mode only; the xp mode sweeps p)
    #[arg(long, default_value_t = 1.0 / 3.0)]
    pub p: f64,
    /// Grid as lo:hi:n with n >= 2 points and lo < hi
    #[arg(long, allow_hyphen_values = true)]
    pub range: String,
    /// Output CSV path
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args)]
pub struct CompareArgs {
    /// Number of random mixtures
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub count: u32,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    /// Density rank of the generated mixtures
    #[arg(long, value_parser = clap::value_parser!(u8).range(2..=3))]
    pub rank: u8,
    /// Skip component orthonormalization to probe the nonorthogonal regime
    #[arg(long)]
    pub nonorthogonal: bool,
    /// Output CSV path (the summary JSON goes to standard output)
    #[arg(long)]
    pub out: PathBuf,
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Measure(args) => report::cmd_measure(&args),
        Command::Sweep(args) => sweep::cmd_sweep(&args),
        Command::Compare(args) => compare::cmd_compare(&args),
        Command::Selftest => selftest::cmd_selftest(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

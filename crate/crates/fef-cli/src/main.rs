//! fef: compute and verify the fully entangled fraction of bipartite states.
//!
//! Exit codes: 0 success, 1 a verification property failed, 2 invalid input
//! or I/O failure, 3 exact method requested for a state with no closed form.

mod commands;
mod detect;
mod statefile;
mod verify;

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "fef",
    version,
    about = "Fully entangled fraction toolkit: closed forms, a unitary-manifold optimizer, \
             family scans, and randomized verification suites"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the FEF of a state loaded from a StateFile document
    Compute(ComputeArgs),
    /// Scan an isotropic or Werner family and write exact-vs-numeric rows as CSV
    Family(FamilyArgs),
    /// Run randomized verification suites and report per-property results
    Verify(VerifyArgs),
    /// Sample a random state and write it as a StateFile document
    Random(RandomArgs),
}

#[derive(Args)]
pub struct ComputeArgs {
    /// Path to a StateFile JSON document
    #[arg(long)]
    pub input: PathBuf,
    /// Which values to compute
    #[arg(long, value_enum, default_value_t = Method::Both)]
    pub method: Method,
    /// Number of optimizer restarts
    #[arg(long, default_value_t = 20)]
    pub restarts: usize,
    /// Optimizer convergence tolerance
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    /// Base seed for randomized restarts
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write the optimizer's best unitary to this path
    #[arg(long)]
    pub emit_unitary: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Exact,
    Numeric,
    Both,
}

#[derive(Args)]
pub struct FamilyArgs {
    /// Which one-parameter family to scan
    #[arg(long, value_enum)]
    pub family: FamilyKind,
    /// Local dimension
    #[arg(long)]
    pub d: usize,
    /// Smallest fidelity parameter in the scan
    #[arg(long, allow_negative_numbers = true)]
    pub f_min: f64,
    /// Largest fidelity parameter in the scan
    #[arg(long, allow_negative_numbers = true)]
    pub f_max: f64,
    /// Number of evenly spaced grid points
    #[arg(long)]
    pub steps: usize,
    /// Path of the CSV file to write
    #[arg(long)]
    pub output: PathBuf,
    /// Seed for the numeric column's optimizer
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyKind {
    Isotropic,
    Werner,
}

#[derive(Args)]
pub struct VerifyArgs {
    /// Which property suite to run
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
    /// Local dimension, between 2 and 6
    #[arg(long, default_value_t = 2)]
    pub d: usize,
    /// Number of random samples per property
    #[arg(long, default_value_t = 100)]
    pub samples: u64,
    /// Base seed for all sampled states
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Bounds,
    Relations,
    Mixtures,
    Superposition,
    All,
}

#[derive(Args)]
pub struct RandomArgs {
    /// Kind of state to sample
    #[arg(long, value_enum)]
    pub kind: RandomKind,
    /// Local dimension
    #[arg(long)]
    pub d: usize,
    /// Rank of the sampled density matrix; defaults to full rank d^2
    #[arg(long)]
    pub rank: Option<usize>,
    /// Seed for the sampler
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Path of the StateFile document to write
    #[arg(long)]
    pub output: PathBuf,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RandomKind {
    Pure,
    Density,
}

/// Failure modes, each mapped to a distinct exit code.
pub enum CliError {
    /// Bad arguments, unparsable or invalid state files, or I/O failures.
    Input(String),
    /// `--method exact` on a mixed state outside the recognized families.
    ExactUnavailable(String),
    /// One or more verification properties failed.
    VerificationFailed(usize),
}

impl CliError {
    fn message(&self) -> String {
        match self {
            CliError::Input(m) | CliError::ExactUnavailable(m) => m.clone(),
            CliError::VerificationFailed(1) => "1 verification property failed".to_string(),
            CliError::VerificationFailed(n) => format!("{n} verification properties failed"),
        }
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::VerificationFailed(_) => 1,
            CliError::Input(_) => 2,
            CliError::ExactUnavailable(_) => 3,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Compute(args) => commands::compute(args),
        Command::Family(args) => commands::family_scan(args),
        Command::Verify(args) => verify::run(args),
        Command::Random(args) => commands::random_state(args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message());
            ExitCode::from(err.exit_code())
        }
    }
}

//! `cachenet`: run a delivery scheme end to end, sweep delivery times over a
//! grid, or regenerate the golden tables.
//!
//! Exit status: 0 on success, 1 when a delivery fails verification, 2 for
//! configuration errors, 3 for IO errors.

mod run;
mod sweep;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use cachenet_core::fixtures::all_fixtures;
use cachenet_core::scalar::parse_rational;
use cachenet_core::{Error, Rational, SchemeId};
use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error as ThisError;

#[derive(Parser)]
#[command(name = "cachenet", version, about = "Cache-aided combination network delivery simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Place, deliver and verify one scenario, then report its delivery time.
    Run(RunArgs),
    /// Evaluate delivery times over a grid and print CSV.
    Sweep(SweepArgs),
    /// Write the golden tables as CSV files.
    Fixtures {
        /// Output directory, created if missing.
        #[arg(long, default_value = "fixtures")]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SchemeArg {
    Mdsia,
    Soft,
    Zf,
    All,
}

impl SchemeArg {
    fn schemes(self) -> Vec<SchemeId> {
        match self {
            SchemeArg::Mdsia => vec![SchemeId::Mdsia],
            SchemeArg::Soft => vec![SchemeId::Soft],
            SchemeArg::Zf => vec![SchemeId::Zf],
            SchemeArg::All => SchemeId::ALL.to_vec(),
        }
    }
}

#[derive(Args, Debug)]
pub struct RunArgs {
    /// Number of edge nodes.
    #[arg(long)]
    h: usize,
    /// ENs per UE.
    #[arg(long)]
    r: usize,
    /// Normalized UE cache size, as `p/q` or a decimal.
    #[arg(long, value_parser = rational)]
    mu_r: Rational,
    /// Normalized EN cache size.
    #[arg(long, value_parser = rational, default_value = "0")]
    mu_t: Rational,
    /// Fronthaul multiplexing gain.
    #[arg(long, value_parser = rational, default_value = "1")]
    rho: Rational,
    #[arg(long, value_enum, default_value = "all")]
    scheme: SchemeArg,
    /// Library size; defaults to one file per UE.
    #[arg(long)]
    n_files: Option<usize>,
    /// File size in bits; defaults to the smallest size the scheme can split.
    #[arg(long)]
    file_size_bits: Option<u64>,
    /// `identity` or a comma-separated list of 1-based file ids, one per UE.
    #[arg(long, default_value = "identity")]
    demand: String,
    /// Library and channel seed. `CACHENET_SEED` takes precedence.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Channel draws to try before giving up on a degenerate channel.
    #[arg(long, default_value_t = 5)]
    max_draws: usize,
    /// Print only the summary, not the cache and message tables.
    #[arg(long)]
    no_tables: bool,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    /// Numbers of edge nodes, comma-separated.
    #[arg(long, value_delimiter = ',', required = true)]
    h: Vec<usize>,
    /// Connectivities, comma-separated.
    #[arg(long, value_delimiter = ',', required = true)]
    r: Vec<usize>,
    #[arg(long, value_parser = rational, default_value = "0")]
    mu_t: Rational,
    #[arg(long, value_parser = rational, default_value = "0")]
    mu_r_start: Rational,
    #[arg(long, value_parser = rational, default_value = "1")]
    mu_r_end: Rational,
    #[arg(long, value_parser = rational, default_value = "1/20")]
    mu_r_step: Rational,
    /// Fronthaul gains, comma-separated. An empty list gives an empty grid.
    #[arg(long, value_delimiter = ',', value_parser = rational, num_args = 0..)]
    rho: Vec<Rational>,
    #[arg(long, value_enum, default_value = "all")]
    scheme: SchemeArg,
    /// Write the CSV here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational::<i128>(s).map_err(|e| e.to_string())
}

#[derive(Debug, ThisError)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Verification(_) => 1,
            CliError::Config(_) => 2,
            CliError::Io { .. } => 3,
        }
    }

    pub fn io(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
        move |source| CliError::Io { path: path.display().to_string(), source }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::PeelFailure { .. }
            | Error::ReconstructionMismatch { .. }
            | Error::EmptyNullSpace { .. }
            | Error::DegenerateChannel { .. }
            | Error::InterferenceLeak { .. }
            | Error::SingularSystem(_) => CliError::Verification(e.to_string()),
            other => CliError::Config(other.to_string()),
        }
    }
}

/// `CACHENET_SEED` if set, else the configured seed.
fn effective_seed(configured: u64) -> Result<u64, CliError> {
    match std::env::var("CACHENET_SEED") {
        Ok(v) => v.trim().parse().map_err(|_| CliError::Config(format!("CACHENET_SEED={v:?} is not a u64"))),
        Err(_) => Ok(configured),
    }
}

fn fixtures(out: &Path) -> Result<(), CliError> {
    let tables = all_fixtures()?;
    std::fs::create_dir_all(out).map_err(CliError::io(out))?;
    for f in &tables {
        let path = out.join(f.file_name());
        std::fs::write(&path, f.to_string()).map_err(CliError::io(&path))?;
    }
    println!("wrote {} tables to {}", tables.len(), out.display());
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(mut args) => effective_seed(args.seed).and_then(|s| {
            args.seed = s;
            run::run(&args)
        }),
        Command::Sweep(args) => sweep::sweep(&args),
        Command::Fixtures { out } => fixtures(&out),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

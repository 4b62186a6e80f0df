use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use lattice_kit::Options;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    /// Classify the span of the input vectors.
    Classify,
    /// Generate the vector sublattice spanned by the inputs.
    Sublattice,
    /// Construct a minimal lattice-subspace containing the inputs.
    Minlat,
    /// Complete a market of primitive securities by options.
    Complete,
    /// Find the minimum-cost insurance of a portfolio.
    Insure,
    /// Time the sublattice and minimal lattice-subspace constructions on
    /// random full-rank matrices.
    Bench,
}

impl Command {
    pub fn as_str(self) -> &'static str {
        match self {
            Command::Classify => "classify",
            Command::Sublattice => "sublattice",
            Command::Minlat => "minlat",
            Command::Complete => "complete",
            Command::Insure => "insure",
            Command::Bench => "bench",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Table,
}

/// Vector lattice analysis of payoff collections.
///
/// Input matrices are k × n with the vectors as columns, unless
/// `--rows-are-vectors` is given. Files ending in `.json` are read as
/// `{"rows", "cols", "data"}` documents, all others as headerless CSV.
#[derive(Debug, Clone, Parser)]
#[command(name = "lattice-kit", version)]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,

    /// Payoff matrix (primitive securities for `complete`).
    #[arg(long)]
    pub input: Option<PathBuf>,

    /// Strike vectors for `complete`, in the same layout as `--input`.
    #[arg(long)]
    pub strikes: Option<PathBuf>,

    /// Security prices for `insure`.
    #[arg(long)]
    pub prices: Option<PathBuf>,

    /// Portfolio to insure.
    #[arg(long)]
    pub theta: Option<PathBuf>,

    /// Floor portfolio.
    #[arg(long)]
    pub phi: Option<PathBuf>,

    /// Override the pivot, residual and deduplication tolerances.
    #[arg(long)]
    pub tol: Option<f64>,

    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Treat input rows, not columns, as the vectors.
    #[arg(long)]
    pub rows_are_vectors: bool,

    /// Seed of the benchmark generator.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,

    /// Write the result here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Leave `timing_ms` out of the result so reruns are byte-identical.
    #[arg(long)]
    pub no_timing: bool,

    /// Smallest rank timed by `bench`.
    #[arg(long, default_value_t = 3)]
    pub min_rank: usize,

    /// Largest rank timed by `bench`.
    #[arg(long, default_value_t = 30)]
    pub max_rank: usize,

    /// Random matrices per rank for `bench`.
    #[arg(long, default_value_t = 50)]
    pub reps: usize,
}

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("--tol must be a positive finite number, got {0}")]
    Tolerance(f64),
    #[error("`{command}` requires --{flag}")]
    Missing {
        command: &'static str,
        flag: &'static str,
    },
    #[error("bench needs 1 <= min-rank <= max-rank and reps >= 1")]
    BenchRange,
}

/// Validated settings for one invocation.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub input: Option<PathBuf>,
    pub strikes: Option<PathBuf>,
    pub prices: Option<PathBuf>,
    pub theta: Option<PathBuf>,
    pub phi: Option<PathBuf>,
    pub tol: Option<f64>,
    pub format: Format,
    pub rows_are_vectors: bool,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub timing: bool,
    pub min_rank: usize,
    pub max_rank: usize,
    pub reps: usize,
}

impl TryFrom<Cli> for RunConfig {
    type Error = ConfigError;

    fn try_from(cli: Cli) -> Result<Self, ConfigError> {
        if let Some(t) = cli.tol {
            if !(t.is_finite() && t > 0.0) {
                return Err(ConfigError::Tolerance(t));
            }
        }
        let name = cli.command.as_str();
        let need = |v: &Option<PathBuf>, flag| {
            if v.is_none() {
                Err(ConfigError::Missing { command: name, flag })
            } else {
                Ok(())
            }
        };
        match cli.command {
            Command::Bench => {
                if cli.min_rank == 0 || cli.min_rank > cli.max_rank || cli.reps == 0 {
                    return Err(ConfigError::BenchRange);
                }
            }
            Command::Insure => {
                need(&cli.input, "input")?;
                need(&cli.prices, "prices")?;
                need(&cli.theta, "theta")?;
                need(&cli.phi, "phi")?;
            }
            _ => need(&cli.input, "input")?,
        }
        Ok(Self {
            command: cli.command,
            input: cli.input,
            strikes: cli.strikes,
            prices: cli.prices,
            theta: cli.theta,
            phi: cli.phi,
            tol: cli.tol,
            format: cli.format,
            rows_are_vectors: cli.rows_are_vectors,
            seed: cli.seed,
            out: cli.out,
            timing: !cli.no_timing,
            min_rank: cli.min_rank,
            max_rank: cli.max_rank,
            reps: cli.reps,
        })
    }
}

impl RunConfig {
    pub fn options(&self) -> Options {
        match self.tol {
            Some(t) => Options::default().with_tol(t),
            None => Options::default(),
        }
    }
}

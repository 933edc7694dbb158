use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};

use wordmap::{FourierError, GroupError, ParseError, ReductionError, TableError};

mod commands;
mod render;

#[derive(Debug, Parser)]
#[command(name = "wordmap", version, about = "Fourier expansions of word maps on finite groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Options,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Occurrence profile and letter classes.
    Classify { word: String },
    /// Symbolic reduction: split data, prefactor and trace.
    Reduce { word: String },
    /// Fourier coefficient of every irreducible character.
    Expand { word: String },
    /// Evaluation counts and timings, brute force against the formulas (CSV).
    Bench { word: String },
    /// Genus of an admissible word.
    Genus { word: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    SquaresFirst,
    DismissiblesFirst,
}

#[derive(Debug, clap::Args)]
pub struct Options {
    /// Comma-separated generator names; inferred from the word if omitted.
    #[arg(long, global = true)]
    pub alphabet: Option<String>,
    /// Built-in group: Z2..Z12, S3, S4, D4, D5, Q8, A4.
    #[arg(long, global = true, conflicts_with = "group_file")]
    pub group: Option<String>,
    /// Multiplication table file.
    #[arg(long, global = true)]
    pub group_file: Option<PathBuf>,
    /// Character table file for the chosen group.
    #[arg(long, global = true)]
    pub table_file: Option<PathBuf>,
    /// Also compute coefficients by brute force and report the difference.
    #[arg(long, global = true)]
    pub verify: bool,
    /// Maximum number of substitutions one enumeration may visit.
    #[arg(long, global = true, default_value_t = wordmap::DEFAULT_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: u64,
    /// Agreement tolerance for --verify.
    #[arg(long, global = true, default_value_t = 1e-6, value_parser = positive_float)]
    pub tol: f64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    pub format: Format,
    /// Seed for computing character tables that are not shipped.
    #[arg(long, global = true, default_value_t = wordmap::chartable::DEFAULT_SEED)]
    pub seed: u64,
    /// Reduction order.
    #[arg(long, global = true, value_enum, default_value_t = StrategyArg::SquaresFirst)]
    pub strategy: StrategyArg,
}

fn positive_float(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x > 0.0 && x.is_finite() => Ok(x),
        Ok(_) => Err("must be a positive number".into()),
        Err(e) => Err(e.to_string()),
    }
}

/// Failures with a dedicated exit status.
#[derive(Debug, thiserror::Error)]
pub enum Failure {
    #[error("verification failed: {0}")]
    Verification(String),
}

fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<FourierError>() {
            return match e {
                FourierError::Budget { .. } => 3,
                _ => 2,
            };
        }
        if let Some(e) = cause.downcast_ref::<GroupError>() {
            return if matches!(e, GroupError::UnknownBuiltin(_)) { 1 } else { 2 };
        }
        if cause.is::<TableError>() || cause.is::<Failure>() || cause.is::<ReductionError>() {
            return 2;
        }
        if cause.is::<ParseError>() || cause.is::<wordmap::AlphabetError>() || cause.is::<std::io::Error>() {
            return 1;
        }
    }
    1
}

fn run(cli: Cli) -> anyhow::Result<String> {
    let opts = &cli.opts;
    match &cli.command {
        Command::Classify { word } => commands::classify(word, opts),
        Command::Reduce { word } => commands::reduce(word, opts),
        Command::Expand { word } => commands::expand(word, opts),
        Command::Bench { word } => commands::bench(word, opts),
        Command::Genus { word } => commands::genus(word, opts),
    }
    .context(format!("{} failed", cli.command.name()))
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Self::Classify { .. } => "classify",
            Self::Reduce { .. } => "reduce",
            Self::Expand { .. } => "expand",
            Self::Bench { .. } => "bench",
            Self::Genus { .. } => "genus",
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

//! `rsl`: hex codec, stems, limits, scans and orbit tools on the command line.

mod commands;
mod tables;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "rsl", version, about = "Rudin-Shapiro-like stems and their limiting demerit factors")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Pretty)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Pretty,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decode a hex seed into its ±1 coefficients.
    Decode {
        #[arg(long)]
        hex: String,
        #[arg(long)]
        len: usize,
    },
    /// Encode a ±1 sequence such as `+++-` as hex.
    Encode {
        #[arg(long, allow_hyphen_values = true)]
        seq: String,
    },
    /// Stem coefficients with finite-depth ADF and CDF.
    Stem {
        #[command(flatten)]
        seeds: Seeds,
        /// Step signs, one `+` or `-` per step; all `+` when omitted.
        #[arg(long, allow_hyphen_values = true)]
        signs: Option<String>,
        #[arg(long)]
        depth: usize,
    },
    /// Limiting ADF, CDF and PSC of a seed or seed pair.
    Limits {
        #[command(flatten)]
        seeds: Seeds,
    },
    /// Exhaustive search for the smallest limiting value.
    Scan {
        #[arg(value_enum)]
        objective: ScanObjective,
        #[arg(long)]
        len: usize,
        #[command(flatten)]
        run: RunArgs,
        /// Checkpoint file, rewritten after every completed range.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Continue from the checkpoint (a missing file starts afresh).
        #[arg(long, requires = "checkpoint")]
        resume: bool,
    },
    /// Rebuild one of the tables of minimizers over a length range (CSV).
    Table {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=3))]
        table: u8,
        #[arg(long, default_value_t = 1)]
        from: usize,
        #[arg(long)]
        to: usize,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Symmetry orbit and canonical form of a seed or seed pair.
    Orbit {
        #[command(flatten)]
        seeds: Seeds,
    },
    /// The seed pair with limiting CDF 1/(3k), with its limits.
    CdfFamily {
        #[arg(long)]
        k: usize,
    },
}

#[derive(Args, Debug)]
struct Seeds {
    #[arg(long)]
    seed: String,
    /// Second seed of a pair.
    #[arg(long)]
    seed2: Option<String>,
    #[arg(long)]
    len: usize,
}

#[derive(Args, Debug)]
struct RunArgs {
    /// Worker threads; defaults to RSL_WORKERS, then to the CPU count.
    #[arg(long, env = "RSL_WORKERS")]
    workers: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ScanObjective {
    Adf,
    Psc,
    PscRestricted,
}

/// Errors split by exit status.
#[derive(Debug)]
pub enum CliError {
    /// Bad flag value; exit status 2.
    Usage(String),
    /// Failure while computing or writing results; exit status 1.
    Compute(String),
}

impl From<rsl_core::Error> for CliError {
    fn from(e: rsl_core::Error) -> Self {
        CliError::Compute(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Compute(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;

fn workers(run: &RunArgs) -> CliResult<usize> {
    match run.workers {
        Some(0) => Err(CliError::Usage("invalid value 0 for --workers: need at least one".into())),
        Some(w) => Ok(w),
        None => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
    }
}

fn dispatch(cli: Cli) -> CliResult<String> {
    let fmt = cli.format;
    match cli.command {
        Command::Decode { hex, len } => commands::decode(&hex, len, fmt),
        Command::Encode { seq } => commands::encode(&seq, fmt),
        Command::Stem { seeds, signs, depth } => {
            commands::stem(&seeds.seed, seeds.seed2.as_deref(), seeds.len, signs.as_deref(), depth, fmt)
        }
        Command::Limits { seeds } => commands::limits(&seeds.seed, seeds.seed2.as_deref(), seeds.len, fmt),
        Command::Scan { objective, len, run, checkpoint, resume } => {
            let objective = match objective {
                ScanObjective::Adf => rsl_core::search::Objective::MinAdf,
                ScanObjective::Psc => rsl_core::search::Objective::MinPsc,
                ScanObjective::PscRestricted => rsl_core::search::Objective::RestrictedPsc,
            };
            commands::scan(objective, len, workers(&run)?, checkpoint.as_deref(), resume, fmt)
        }
        Command::Table { table, from, to, run } => tables::emit(table, from, to, workers(&run)?, fmt),
        Command::Orbit { seeds } => commands::orbit(&seeds.seed, seeds.seed2.as_deref(), seeds.len, fmt),
        Command::CdfFamily { k } => commands::cdf_family(k, fmt),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(out) => {
            print!("{out}");
            if !out.ends_with('\n') {
                println!();
            }
            ExitCode::SUCCESS
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}\n\nFor more information, try '--help'.");
            ExitCode::from(2)
        }
        Err(CliError::Compute(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

//! `repfree`: run the repetition detectors, enumerate or sample their costs,
//! evaluate the closed forms and regenerate the reference tables.

mod commands;
mod output;
mod range;

use std::panic;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use repfree_core::{AlgorithmId, GarbagePolicy, TableId};

use output::OutputFormat;
use range::NRange;

#[derive(Debug, Parser)]
#[command(
    name = "repfree",
    version,
    about = "Repetition detection in random sequences",
    after_help = "Environment:\n  REPFREE_ENUM_CAP  largest n that may be enumerated exhaustively (1..=9, default 8)\n\nExit codes: 0 success, 1 repetition found (check) or failed comparison (table), 2 usage or validation error, 3 internal failure."
)]
struct Cli {
    #[command(flatten)]
    common: Common,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Debug, Args)]
pub struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value_t, global = true)]
    pub format: OutputFormat,

    /// Base seed for sampling.
    #[arg(long, default_value_t = 42, global = true)]
    pub seed: u64,

    /// Number of random inputs per sampled n.
    #[arg(long, default_value_t = 100_000, global = true)]
    pub samples: u64,

    /// Worker threads for enumeration and sampling.
    #[arg(long, default_value_t = 1, global = true)]
    pub workers: usize,

    /// Largest n computed by exhaustive enumeration; larger n is sampled or
    /// skipped.
    #[arg(long, default_value_t = 7, global = true)]
    pub max_n_exact: usize,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run one detector on one sequence. Exits 1 when a repetition is found.
    Check {
        #[arg(long)]
        alg: AlgorithmId,
        /// Comma-separated values, each in 1..=n where n is the length.
        #[arg(long, allow_hyphen_values = true)]
        seq: String,
        /// Working-vector fill for GARBAGE: zeroed, const:<c> or seeded:<seed>.
        #[arg(long)]
        garbage: Option<GarbagePolicy>,
    },
    /// Exact costs over all n^n inputs.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        alg: AlgorithmId,
        #[arg(long)]
        garbage: Option<GarbagePolicy>,
    },
    /// Sampled costs at one n.
    Sample {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        alg: AlgorithmId,
        #[arg(long)]
        garbage: Option<GarbagePolicy>,
    },
    /// Sampled costs over a range of n, each with its own derived seed.
    Sweep {
        /// `a..b` (inclusive), a comma list, or a single value.
        #[arg(long)]
        n: NRange,
        #[arg(long)]
        alg: AlgorithmId,
    },
    /// Least-squares fit of `a sqrt(n) log2(n) + b` to mean comparisons.
    Fit {
        #[arg(long, default_value = "tree")]
        alg: AlgorithmId,
        /// Values of n; means are exact up to --max-n-exact and sampled above.
        #[arg(long, conflicts_with = "points", required_unless_present = "points")]
        n: Option<NRange>,
        /// Explicit `n:mean` pairs, comma-separated.
        #[arg(long)]
        points: Option<String>,
    },
    /// Evaluate a closed-form expression.
    Formula {
        #[arg(long)]
        name: repfree_core::analytics::Formula,
        #[arg(long)]
        n: NRange,
    },
    /// Regenerate a reference table and compare it cell by cell. Exits 1 on
    /// any failed cell.
    Table { id: TableId },
    /// Known inconsistencies in the reference material.
    Ledger,
}

const EXIT_REPEAT: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match panic::catch_unwind(|| commands::dispatch(&cli.common, &cli.command)) {
        Ok(Ok(code)) => code,
        Ok(Err(e)) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<repfree_core::Error>().is_some() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::from(EXIT_INTERNAL)
            }
        }
        Err(_) => ExitCode::from(EXIT_INTERNAL),
    }
}

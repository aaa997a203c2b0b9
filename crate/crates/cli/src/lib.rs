//! Command-line surface: instance files, reports and SVG output.

pub mod commands;
pub mod format;
pub mod svg;

use std::path::PathBuf;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use commands::run;

/// Process exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[repr(u8)]
pub enum Exit {
    /// Success, or a tree/path was found.
    Success = 0,
    /// The question was decided negatively.
    DecidedNone = 1,
    /// A search budget ran out before a decision.
    BudgetExhausted = 2,
    /// Usage, parse, validation or I/O error.
    Error = 3,
}

#[derive(Debug, Parser)]
#[command(
    name = "interf",
    version,
    about = "Min-max receiver interference spanning trees"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate radii and interference of the tree stored in a points instance.
    Eval {
        input: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Turn a grid instance into its gadget node set.
    Reduce {
        input: PathBuf,
        /// Also store the Hamilton-path tree when the grid has a Hamilton path.
        #[arg(long)]
        with_tree: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Minimize the maximum interference, or decide a bound with --k.
    Solve {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Bnb)]
        mode: Mode,
        /// Decide whether some tree has interference at most K.
        #[arg(long)]
        k: Option<usize>,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long)]
        json: bool,
        /// Write the instance with the resulting tree to this path.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search a grid instance for a Hamilton path.
    Hamilton {
        input: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Run the Hamilton path / interference-3 round trip on a grid instance.
    VerifyLemmas {
        input: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long)]
        json: bool,
    },
    /// Draw a points instance, its tree and the transmission disks.
    Svg {
        input: PathBuf,
        /// Ignore the tree block and draw the nodes only.
        #[arg(long)]
        no_tree: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exhaustive,
    Bnb,
    Heuristic,
}

#[derive(Clone, Debug, Default, Args)]
pub struct BudgetArgs {
    #[arg(long)]
    pub max_trees: Option<u64>,
    /// e.g. 500ms, 10s, 2m; a bare number is seconds.
    #[arg(long, value_parser = parse_duration)]
    pub time_limit: Option<Duration>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

impl BudgetArgs {
    pub fn to_budget(&self) -> interf_core::SearchBudget {
        interf_core::SearchBudget {
            max_trees: self.max_trees,
            time_limit: self.time_limit,
            rng_seed: self.seed,
        }
    }
}

pub fn parse_duration(s: &str) -> Result<Duration, String> {
    let s = s.trim();
    let split = s
        .find(|c: char| !(c.is_ascii_digit() || c == '.'))
        .unwrap_or(s.len());
    let (num, unit) = s.split_at(split);
    let value: f64 = num.parse().map_err(|_| format!("invalid duration '{s}'"))?;
    let secs = match unit {
        "" | "s" => value,
        "ms" => value / 1000.0,
        "m" => value * 60.0,
        "h" => value * 3600.0,
        _ => return Err(format!("unknown duration unit '{unit}'")),
    };
    Duration::try_from_secs_f64(secs).map_err(|e| e.to_string())
}

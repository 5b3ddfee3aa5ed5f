//! `mmpks`: command-line access to the toolkit.
//!
//! Exit status: 0 when the asked property holds for every input, 1 when it
//! fails for some input, 2 on errors, 3 when a budget ran out first.

mod commands;
mod input;

use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};

use mmpks::solver::Limits;

#[derive(Parser, Debug)]
#[command(name = "mmpks", version, about = "MMP hypergraph toolkit for Kochen-Specker sets")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Dimension of the input; every edge must have this many vertices.
    #[arg(long, global = true)]
    pub dim: Option<usize>,
    /// Seed for randomized steps; required whenever one is used.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Deterministic or seeded random edge order.
    #[arg(long, global = true, value_enum, default_value_t = Mode::Det)]
    pub mode: Mode,
    /// Time budget in seconds; per item for `generate`.
    #[arg(long, global = true, value_parser = parse_budget)]
    pub budget: Option<f64>,
    /// Worker threads for `generate`; 0 uses all cores.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    /// Component alphabet: a builtin name or a comma list such as `0,1,w`.
    #[arg(long, global = true, default_value = "pm1")]
    pub alphabet: String,
}

fn parse_budget(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x.is_finite() && x >= 0.0 => Ok(x),
        Ok(_) => Err("must be a non-negative number of seconds".into()),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Det,
    Rand,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Re-serialize each input line.
    Parse { input: String },
    /// Check the MMP conditions.
    Validate { input: String },
    /// Decide the KS property; a non-KS input gets a witness.
    KsCheck { input: String },
    /// Assignment meeting as many edges as possible with one 1 each.
    Witness { input: String },
    /// Test whether every edge is needed.
    Critical { input: String },
    /// Remove edges until critical.
    Reduce { input: String },
    /// Search for a parity proof.
    Parity { input: String },
    /// Canonical form and hash.
    Canon { input: String },
    /// Keep one line per isomorphism class.
    Dedup { input: String },
    /// Test whether `a` embeds into `b`.
    Subgraph { a: String, b: String },
    /// Longest loop of edges.
    Loops { input: String },
    /// Remove edges according to a plan.
    Strip {
        input: String,
        #[command(flatten)]
        plan: PlanArgs,
    },
    /// Strip, filter, reduce and de-duplicate a master.
    Generate {
        /// Master file or id; see `--master`.
        input: Option<String>,
        /// Registered master name.
        #[arg(long, conflicts_with = "input")]
        master: Option<String>,
        #[command(flatten)]
        plan: PlanArgs,
        /// Directory for resumable state and final outputs.
        #[arg(long)]
        checkpoint: Option<std::path::PathBuf>,
        /// Write the critical corpus here.
        #[arg(long)]
        out: Option<std::path::PathBuf>,
        /// Write the statistics table here as well as to stdout.
        #[arg(long)]
        stats: Option<std::path::PathBuf>,
    },
    /// Search for vectors over `--alphabet`.
    VectorsFind { input: String },
    /// Check a coordinatization file against a hypergraph.
    VectorsVerify { input: String, coordinates: std::path::PathBuf },
    /// Statistics table of a corpus of criticals.
    Stats { input: String },
    /// Incidence graph in DOT format.
    ExportDot {
        input: String,
        /// Output of `loops` whose first loop is highlighted.
        #[arg(long)]
        loops: Option<std::path::PathBuf>,
    },
}

#[derive(Args, Debug, Clone, Default)]
pub struct PlanArgs {
    /// closure (every KS subset), exhaustive or random.
    #[arg(long, value_enum)]
    pub plan: Option<PlanKind>,
    /// Edges to remove; shorthand for `--k-min K --k-max K`.
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub k_min: Option<usize>,
    #[arg(long)]
    pub k_max: Option<usize>,
    /// Random samples.
    #[arg(long)]
    pub samples: Option<u64>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlanKind {
    Closure,
    Exhaustive,
    Random,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    File(#[from] mmpks::mmp::FileError),
    #[error(transparent)]
    Pipeline(#[from] mmpks::pipeline::PipelineError),
    #[error(transparent)]
    Coord(#[from] mmpks::vector::CoordError),
    #[error(transparent)]
    Component(#[from] mmpks::vector::ComponentError),
    #[error("{0}")]
    Usage(String),
}

/// Answer for one command; the worst answer over all inputs is the exit
/// status.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Yes,
    No,
    Unknown,
}

impl Status {
    fn code(self) -> u8 {
        match self {
            Status::Yes => 0,
            Status::No => 1,
            Status::Unknown => 3,
        }
    }
}

impl Global {
    pub fn limits(&self) -> Limits {
        self.duration().map_or(Limits::none(), Limits::within)
    }

    pub fn duration(&self) -> Option<Duration> {
        self.budget.map(Duration::from_secs_f64)
    }

    pub fn require_seed(&self, why: &str) -> Result<u64, CliError> {
        self.seed.ok_or_else(|| CliError::Usage(format!("{why} needs an explicit --seed")))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(s) => ExitCode::from(s.code()),
        Err(e) => {
            eprintln!("mmpks: {e}");
            ExitCode::from(2)
        }
    }
}

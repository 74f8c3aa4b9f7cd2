use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

pub const DEFAULT_SIGMA: f64 = 0.2;

#[derive(Debug, Parser)]
#[command(
    name = "hdsel",
    version,
    about = "Feature selection for mixed-type tables"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Attribute statistics and the hybrid distance matrix.
    Distances(DistancesArgs),
    /// Gaussian-kernel relation, its approximations and class dependency.
    Relation(RelationArgs),
    /// Build and solve the selection model for one threshold or a sweep.
    Select(SelectArgs),
    /// Cross-validated nearest-neighbour scores for a feature subset.
    Evaluate(EvaluateArgs),
}

#[derive(Debug, Args)]
pub struct DataArgs {
    /// JSON schema describing the attribute kinds.
    #[arg(long)]
    pub schema: Option<PathBuf>,
    /// CSV table with a header row.
    #[arg(long)]
    pub data: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct KernelArgs {
    /// Kernel width σ [default: 0.2].
    #[arg(long, conflicts_with = "sigma2")]
    pub sigma: Option<f64>,
    /// Kernel variance σ², as an alternative to --sigma.
    #[arg(long)]
    pub sigma2: Option<f64>,
}

impl KernelArgs {
    pub fn sigma(&self) -> f64 {
        match (self.sigma, self.sigma2) {
            (Some(s), _) => s,
            (None, Some(s2)) => s2.sqrt(),
            (None, None) => DEFAULT_SIGMA,
        }
    }
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Normal,
    Optimistic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Solver {
    Exact,
    Greedy,
    Blackhole,
}

#[derive(Debug, Args)]
pub struct DistancesArgs {
    #[command(flatten)]
    pub data: DataArgs,
    /// Also emit per-attribute squared distances for every cross-class pair.
    #[arg(long)]
    pub decompose: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct RelationArgs {
    #[command(flatten)]
    pub data: DataArgs,
    #[command(flatten)]
    pub kernel: KernelArgs,
    /// Use this CSV matrix (no header) as the kernel relation instead of
    /// computing it from the data.
    #[arg(long)]
    pub matrix: Option<PathBuf>,
    /// Emit the sup-product upper relation.
    #[arg(long)]
    pub upper: bool,
    /// Emit the inf-probabilistic-sum lower relation.
    #[arg(long)]
    pub lower: bool,
    /// Emit class lower/upper approximations, positive region and dependency.
    #[arg(long)]
    pub approximations: bool,
    /// Report the worst product-transitivity violation of the kernel.
    #[arg(long)]
    pub check_transitivity: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("target").required(true).args(["delta", "sweep"])))]
pub struct SelectArgs {
    #[command(flatten)]
    pub data: DataArgs,
    #[command(flatten)]
    pub kernel: KernelArgs,
    /// Similarity threshold δ in [0, 1].
    #[arg(long)]
    pub delta: Option<f64>,
    /// Solve for every δ in the grid (default 0.0, 0.1, …, 0.9).
    #[arg(long)]
    pub sweep: bool,
    /// Comma-separated sweep values.
    #[arg(long, value_delimiter = ',', requires = "sweep")]
    pub grid: Option<Vec<f64>>,
    #[arg(long, value_enum, default_value_t = Mode::Normal)]
    pub mode: Mode,
    #[arg(long, value_enum, default_value_t = Solver::Exact)]
    pub solver: Solver,
    /// Seed of the black-hole search.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Black-hole population size.
    #[arg(long, default_value_t = 30)]
    pub pop: usize,
    /// Black-hole iteration limit.
    #[arg(long, default_value_t = 500)]
    pub iters: usize,
    /// Black-hole binarization threshold.
    #[arg(long, default_value_t = 0.5)]
    pub threshold: f64,
    /// Search-node budget of the exact solver.
    #[arg(long, default_value_t = 50_000_000)]
    pub node_limit: u64,
    /// Drop constraint rows implied by other rows before solving.
    #[arg(long)]
    pub prune: bool,
    /// Write the model (single δ only) as JSON to this path.
    #[arg(long, conflicts_with = "sweep")]
    pub dump_model: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("subset").required(true).args(["mask", "from_select"])))]
pub struct EvaluateArgs {
    #[command(flatten)]
    pub data: DataArgs,
    /// Comma-separated 1-based feature numbers.
    #[arg(long, value_delimiter = ',')]
    pub mask: Option<Vec<usize>>,
    /// Take the subset from a `select` report (the best sweep point for sweeps).
    #[arg(long)]
    pub from_select: Option<PathBuf>,
    #[arg(long, default_value_t = 5)]
    pub folds: usize,
    #[arg(long, default_value_t = 3)]
    pub knn_k: usize,
    /// Seed of the fold shuffle.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Positive class for precision, recall and MCC (two-class data only).
    #[arg(long)]
    pub positive: Option<String>,
    #[command(flatten)]
    pub output: OutputArgs,
}

//! `nodeprice` command-line front end.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nodeprice::{CriticalityMode, SimilarityMode};

#[derive(Parser, Debug)]
#[command(name = "nodeprice", version, about = "Price graph nodes by structural substitutability")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// Edge list to read ("u v" per line, '#' comments); "-" reads stdin
    #[arg(long, short, global = true)]
    pub input: Option<PathBuf>,

    /// Write results here instead of stdout
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    /// JSON pricing config; command-line flags override its fields
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Worker threads (default: available parallelism)
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Substitutability prices for every node
    Price(PriceArgs),
    /// Per-node mean similarity scores
    Similarity(PipelineArgs),
    /// Dump the dominator tree as "node idom" lines
    Domtree(RootArgs),
    /// Prices from a comparison method
    Baseline(BaselineArgs),
    /// Substitutability pricing next to baselines, long format
    Compare(CompareArgs),
    /// Runtime scaling over generated random graphs
    Bench(BenchArgs),
    /// Generate a random directed graph as an edge list
    Gen(GenArgs),
}

#[derive(Args, Debug, Clone)]
pub struct RootArgs {
    /// Use this node label as root instead of adding a virtual super-root
    #[arg(long)]
    pub root: Option<u64>,
}

#[derive(Args, Debug, Clone)]
pub struct PipelineArgs {
    #[command(flatten)]
    pub root: RootArgs,

    #[arg(long, value_enum)]
    pub similarity: Option<SimilarityArg>,

    #[arg(long)]
    pub num_perm: Option<usize>,

    #[arg(long)]
    pub threshold: Option<f64>,
}

#[derive(Args, Debug, Clone)]
pub struct PriceArgs {
    #[command(flatten)]
    pub pipeline: PipelineArgs,

    #[arg(long, value_enum)]
    pub criticality: Option<CriticalityArg>,

    #[arg(long)]
    pub epsilon: Option<f64>,

    /// Also write the JSON report (config, stage timings, rows) here
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum SimilarityArg {
    Exact,
    MinhashLsh,
}

impl From<SimilarityArg> for SimilarityMode {
    fn from(a: SimilarityArg) -> Self {
        match a {
            SimilarityArg::Exact => SimilarityMode::Exact,
            SimilarityArg::MinhashLsh => SimilarityMode::MinhashLsh,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum CriticalityArg {
    Dominator,
    ShortestPath,
}

impl From<CriticalityArg> for CriticalityMode {
    fn from(a: CriticalityArg) -> Self {
        match a {
            CriticalityArg::Dominator => CriticalityMode::Dominator,
            CriticalityArg::ShortestPath => CriticalityMode::ShortestPath,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaselineMethod {
    Shapley,
    Entropy,
    Degree,
    Eigenvector,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompareMethod {
    Substitutability,
    Shapley,
    Entropy,
    Degree,
    Eigenvector,
}

#[derive(Args, Debug, Clone)]
pub struct BaselineOptions {
    /// Monte Carlo permutations for Shapley values
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,

    /// Treat the attribute column as numeric for the entropy method
    #[arg(long)]
    pub numeric_attributes: bool,

    #[arg(long, default_value_t = 1e-10)]
    pub tolerance: f64,

    #[arg(long, default_value_t = 1000)]
    pub max_iter: usize,
}

#[derive(Args, Debug, Clone)]
pub struct BaselineArgs {
    #[arg(long, value_enum)]
    pub method: BaselineMethod,

    #[command(flatten)]
    pub root: RootArgs,

    #[command(flatten)]
    pub options: BaselineOptions,
}

#[derive(Args, Debug, Clone)]
pub struct CompareArgs {
    /// Comma-separated methods
    #[arg(
        long,
        value_enum,
        value_delimiter = ',',
        default_value = "substitutability,shapley,entropy,degree,eigenvector"
    )]
    pub methods: Vec<CompareMethod>,

    #[command(flatten)]
    pub pipeline: PipelineArgs,

    #[command(flatten)]
    pub options: BaselineOptions,

    /// Write the per-method dispersion summary here (default: stderr)
    #[arg(long)]
    pub summary: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum BenchMode {
    Exact,
    MinhashLsh,
    Both,
}

#[derive(Args, Debug, Clone)]
pub struct BenchArgs {
    /// Comma-separated node counts (default 1000,2000,4000,8000,16000)
    #[arg(long, value_delimiter = ',')]
    pub sizes: Option<Vec<usize>>,

    /// Edges per node
    #[arg(long, default_value_t = 5)]
    pub edge_factor: usize,

    /// Number of seeds per size, counting up from --seed
    #[arg(long, default_value_t = 10)]
    pub seeds: u64,

    /// Pipeline runs per graph; the median is reported
    #[arg(long, default_value_t = 3)]
    pub repeats: usize,

    #[arg(long, value_enum, default_value_t = BenchMode::MinhashLsh)]
    pub mode: BenchMode,

    /// Write adjacent-step runtime ratios here (default: stderr)
    #[arg(long)]
    pub ratios: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct GenArgs {
    #[arg(long, short)]
    pub nodes: usize,

    #[arg(long, short)]
    pub edges: usize,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(commands::exit_code(&e))
        }
    }
}

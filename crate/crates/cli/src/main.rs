mod commands;
mod cputime;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "hypermod",
    version,
    about = "Hypergraph clustering by modularity maximization"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Cluster a hypergraph and write the partition and metrics.
    Cluster(ClusterArgs),
    /// Compare a predicted partition with ground-truth labels.
    Eval(EvalArgs),
    /// Generate a synthetic hypergraph with planted classes.
    Generate(GenerateArgs),
    /// Histogram of largest-cluster shares over hyperedges, per partition.
    Stats(StatsArgs),
    /// Time hypergraph Louvain on synthetic hypergraphs of growing size.
    Bench(BenchArgs),
    /// Export a graph reduction of a hypergraph as a weighted edge list.
    Reduce(ReduceArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Louvain on the clique reduction.
    CliqueLouvain,
    /// Louvain on the degree-preserving reduction.
    Hlouvain,
    /// Iteratively reweighted hypergraph Louvain.
    Irmm,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::CliqueLouvain => "clique-louvain",
            Method::Hlouvain => "hlouvain",
            Method::Irmm => "irmm",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Norm {
    Linf,
    L2,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Reduction {
    Clique,
    DegreePreserving,
}

#[derive(Args)]
pub struct ClusterArgs {
    /// Hypergraph in hMETIS format.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "irmm")]
    pub method: Method,
    /// Weight kept from the previous round when blending hyperedge weights.
    #[arg(long, default_value_t = 0.5)]
    pub alpha: f64,
    /// Stop reweighting once the weight change falls below this.
    #[arg(long, default_value_t = 0.01)]
    pub threshold: f64,
    #[arg(long, default_value_t = 50)]
    pub max_iters: usize,
    /// Norm used to measure the weight change between rounds.
    #[arg(long, value_enum, default_value = "linf")]
    pub norm: Norm,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Visit nodes in seeded random order instead of ascending order.
    #[arg(long)]
    pub shuffle: bool,
    /// Merge clusters down to exactly this many.
    #[arg(long)]
    pub k: Option<usize>,
    /// Ground-truth labels; enables the f1 metric.
    #[arg(long)]
    pub labels: Option<PathBuf>,
    /// Partition output [default: <input stem>.<method>.partition.tsv].
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Metrics JSON output [default: <input stem>.<method>.metrics.json].
    #[arg(long)]
    pub metrics: Option<PathBuf>,
    /// Per-round trace: iteration, weight change, modularity, cluster count.
    #[arg(long)]
    pub trace: Option<PathBuf>,
    /// Per-round histogram of largest-cluster shares.
    #[arg(long)]
    pub stats_trace: Option<PathBuf>,
}

#[derive(Args)]
pub struct EvalArgs {
    /// Partition (`node<TAB>cluster`) or label file (one label per line).
    #[arg(long)]
    pub pred: PathBuf,
    #[arg(long)]
    pub truth: PathBuf,
    /// Also write the JSON report here.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args)]
pub struct GenerateArgs {
    #[arg(long)]
    pub nodes: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 2)]
    pub classes: usize,
    /// Probability that a hyperedge ignores class membership.
    #[arg(long, default_value_t = 0.4)]
    pub homophily_deviation: f64,
    /// Hyperedges per node.
    #[arg(long, default_value_t = 1.5)]
    pub edge_factor: f64,
    /// Hypergraph output [default: synthetic-n<nodes>-s<seed>.hgr].
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Class labels output [default: synthetic-n<nodes>-s<seed>.labels].
    #[arg(long)]
    pub labels: Option<PathBuf>,
}

#[derive(Args)]
pub struct StatsArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Partition or label file; repeat for several rows.
    #[arg(long, required = true)]
    pub partition: Vec<PathBuf>,
    /// TSV output; stdout when absent.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args)]
pub struct BenchArgs {
    #[arg(long, default_value_t = 1000)]
    pub min: usize,
    #[arg(long, default_value_t = 10000)]
    pub max: usize,
    #[arg(long, default_value_t = 500)]
    pub step: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// TSV output; stdout when absent.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args)]
pub struct ReduceArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "degree-preserving")]
    pub reduction: Reduction,
    /// Edge list output; stdout when absent.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

fn configure_threads() -> anyhow::Result<()> {
    if let Ok(v) = std::env::var("HYPERMOD_THREADS") {
        let n: usize = v.parse().map_err(|_| {
            anyhow::anyhow!("HYPERMOD_THREADS must be a positive integer, got `{v}`")
        })?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global()?;
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = configure_threads().and_then(|()| match cli.command {
        Command::Cluster(a) => commands::cluster(&a),
        Command::Eval(a) => commands::eval(&a),
        Command::Generate(a) => commands::generate(&a),
        Command::Stats(a) => commands::stats(&a),
        Command::Bench(a) => commands::bench(&a),
        Command::Reduce(a) => commands::reduce(&a),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(
    name = "fanspec",
    version,
    about = "Spectral and edge-extremal computations for graphs without the (k,r)-fan",
    long_about = "Spectral and edge-extremal computations for graphs without the (k,r)-fan F_{k,r}: \
                  k copies of K_r sharing one vertex.\n\n\
                  Graphs are read as graph6 (--graph6, --file, or newline-separated on stdin) or built \
                  with --construct using turan:n,p | multipartite:a,b,.. | fan:k,r | extremal:n,k,r[,part] \
                  | split:n,k | ch:k.\n\n\
                  Exit status: 0 success, 1 the checked graph contains the fan, 2 bad arguments, \
                  3 computation failure."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a graph and print it as graph6
    Construct(ConstructArgs),
    /// Adjacency spectral radius and Perron vector
    Lambda(SpectralArgs),
    /// Largest eigenvalue of the signless Laplacian D + A
    Qlambda(SpectralArgs),
    /// Characteristic polynomial of a complete multipartite graph
    Charpoly(CharpolyArgs),
    /// Test graphs for a copy of F_{k,r} (exit 1 if any contains it)
    Check(CheckArgs),
    /// Closed-form ex(n, F_{k,r}) with its applicability threshold
    Turannum(TurannumArgs),
    /// Exhaustive extremal search over all graphs on n vertices
    Brute(BruteArgs),
    /// Exhaustive maximum edges under matching-number and degree bounds
    BruteF(BruteFArgs),
    /// Spectral maximum over the Turán-host family with embedded small graphs
    Family(FamilyArgs),
    /// Compare the family's spectral maximizer with the extremal edge count
    Verify(VerifyArgs),
    /// Smallest Perron entry against 1 - 20k^2r^2/n
    Perron(PerronArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Turan,
    Multipartite,
    Fan,
    Extremal,
    Split,
    Ch,
}

#[derive(Args, Debug)]
pub struct ConstructArgs {
    /// Family to build
    pub family: Family,
    /// Number of vertices (turan, extremal, split)
    #[arg(long)]
    pub n: Option<usize>,
    /// Number of parts (turan)
    #[arg(long)]
    pub p: Option<usize>,
    /// Number of cliques (fan, extremal, ch) or clique order (split)
    #[arg(long)]
    pub k: Option<usize>,
    /// Clique order (fan, extremal)
    #[arg(long)]
    pub r: Option<usize>,
    /// Comma-separated part sizes (multipartite)
    #[arg(long)]
    pub sizes: Option<String>,
    /// Host part for the embedded graph (extremal; default 0, the largest)
    #[arg(long)]
    pub part: Option<usize>,
}

#[derive(Args, Debug, Default)]
#[group(multiple = false)]
pub struct Source {
    /// A single graph in graph6
    #[arg(long)]
    pub graph6: Option<String>,
    /// File with one graph6 per line
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Constructor expression, e.g. "extremal:200,2,3"
    #[arg(long)]
    pub construct: Option<String>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Raw,
}

#[derive(Args, Debug)]
pub struct SpectralArgs {
    #[command(flatten)]
    pub source: Source,
    /// Residual tolerance (infinity norm of Ax - λx)
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    /// Iteration budget
    #[arg(long, default_value_t = 1_000_000)]
    pub max_iters: usize,
    /// Include the eigenvector (maximum entry 1)
    #[arg(long)]
    pub vector: bool,
    /// Output format [default: json, or csv with --sweep]
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Sweep name=start:step:end, replacing {name} in --construct
    #[arg(long, requires = "construct", value_name = "NAME=START:STEP:END")]
    pub sweep: Option<String>,
}

#[derive(Args, Debug)]
pub struct CharpolyArgs {
    /// Comma-separated part sizes
    #[arg(long)]
    pub sizes: String,
    /// Evaluation point
    #[arg(long, allow_negative_numbers = true)]
    pub x: f64,
    /// Print only the value
    #[arg(long)]
    pub raw: bool,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    #[command(flatten)]
    pub source: Source,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub r: usize,
    /// Print a JSON witness for each graph that contains the fan
    #[arg(long)]
    pub witness: bool,
}

#[derive(Args, Debug)]
pub struct TurannumArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub r: usize,
    /// Print only the value
    #[arg(long)]
    pub raw: bool,
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    /// Worker threads
    #[arg(long, value_parser = clap::value_parser!(u16).range(1..))]
    pub jobs: Option<u16>,
    /// Also write the JSON report to this file
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModeArg {
    Edges,
    Lambda,
}

#[derive(Args, Debug)]
pub struct BruteArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub r: usize,
    /// Quantity to maximize
    #[arg(long, value_enum, default_value_t = ModeArg::Edges)]
    pub mode: ModeArg,
    #[command(flatten)]
    pub search: SearchArgs,
    /// Progress sidecar [default: <out>.checkpoint.json when --out is given]
    #[arg(long)]
    pub checkpoint: Option<PathBuf>,
    /// Continue from the progress sidecar
    #[arg(long)]
    pub resume: bool,
}

#[derive(Args, Debug)]
pub struct BruteFArgs {
    /// Matching number bound
    #[arg(long)]
    pub beta: usize,
    /// Maximum degree bound
    #[arg(long)]
    pub delta: usize,
    /// Largest order searched
    #[arg(long, default_value_t = 9)]
    pub n_max: usize,
    #[command(flatten)]
    pub search: SearchArgs,
}

#[derive(Args, Debug)]
pub struct FamilyArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub r: usize,
    /// Largest allowed difference between part sizes
    #[arg(long, default_value_t = 2)]
    pub imbalance: usize,
    #[command(flatten)]
    pub search: SearchArgs,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub r: usize,
    #[command(flatten)]
    pub search: SearchArgs,
}

#[derive(Args, Debug)]
pub struct PerronArgs {
    #[command(flatten)]
    pub source: Source,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub r: usize,
    /// Residual tolerance
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
}

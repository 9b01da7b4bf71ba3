use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(name = "bnsl", version, about = "Exact Bayesian network structure learning and family-polytope tools")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Seed for randomized audits.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for independent verification jobs.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Learn an optimal network from a score file.
    Solve(SolveArgs),
    /// Look for a violated cluster constraint at a fractional point.
    Separate(SeparateArgs),
    /// Rewrite an instance as a size-two instance or an acyclic subgraph problem.
    Reduce(ReduceArgs),
    /// Facet catalogs, certification and faces.
    #[command(subcommand)]
    Polytope(PolytopeCommand),
    /// Build the vertex-cover gadget for a graph.
    Gadget(GadgetArgs),
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    pub scores: PathBuf,
    /// Drop parent sets larger than K.
    #[arg(long)]
    pub palim: Option<usize>,
    /// Comma list of cluster, kcluster, class4b, triples (κ=2 rows of every node triple up front) or none.
    #[arg(long, default_value = "cluster,triples")]
    pub cuts: String,
    #[arg(long, value_enum, default_value_t = Branch::Var)]
    pub branch: Branch,
    #[arg(long, value_enum, default_value_t = NodeOrder::Best)]
    pub node: NodeOrder,
    /// Integrality and cut tolerance.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Time limit in seconds.
    #[arg(long)]
    pub time: Option<f64>,
    /// Solve every LP in exact rational arithmetic.
    #[arg(long)]
    pub exact_rational: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Branch {
    Var,
    Sum,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum NodeOrder {
    Best,
    Dfs,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq)]
pub enum Method {
    Exact,
    Heuristic,
}

#[derive(Args, Debug)]
pub struct SeparateArgs {
    pub scores: PathBuf,
    /// Lines `child <- {parents} value`; unlisted families are zero.
    pub point: PathBuf,
    #[arg(long, value_enum, default_value_t = Method::Exact)]
    pub method: Method,
    /// Also check k-cluster rows of this comma-separated cluster.
    #[arg(long)]
    pub kcluster: Option<String>,
    #[arg(long)]
    pub palim: Option<usize>,
    /// Minimum violation for a cut.
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq)]
pub enum Target {
    K2,
    Asp,
}

#[derive(Args, Debug)]
pub struct ReduceArgs {
    pub scores: PathBuf,
    #[arg(long, value_enum)]
    pub to: Target,
    #[arg(long)]
    pub palim: Option<usize>,
    /// Solve the reduced problem and map the optimum back.
    #[arg(long)]
    pub solve: bool,
}

#[derive(Subcommand, Debug)]
pub enum PolytopeCommand {
    /// Count (or list) acyclic digraphs.
    Enumerate(PolyArgs),
    /// Certify every catalog entry as valid and facet-defining.
    Verify(VerifyArgs),
    /// Print the facet catalog.
    Catalog(CatalogArgs),
    /// Replay the extended formulation and its class projections.
    Liftproject,
    /// Check an order face or a sink face.
    Faces(FaceArgs),
}

#[derive(Args, Debug)]
pub struct PolyArgs {
    #[arg(long)]
    pub p: usize,
    #[arg(long)]
    pub palim: Option<usize>,
    /// Print every digraph.
    #[arg(long)]
    pub list: bool,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long)]
    pub p: usize,
    #[arg(long)]
    pub palim: Option<usize>,
    /// Also test this many random relabellings of catalog entries.
    #[arg(long, default_value_t = 0)]
    pub audit: usize,
    /// Also rebuild the hull by double description (three nodes or fewer).
    #[arg(long)]
    pub hull: bool,
}

#[derive(Args, Debug)]
pub struct CatalogArgs {
    #[arg(long)]
    pub p: usize,
    #[arg(long)]
    pub palim: Option<usize>,
    /// Coefficient rows with a column header.
    #[arg(long)]
    pub machine: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq)]
pub enum FaceKind {
    Order,
    Sink,
}

#[derive(Args, Debug)]
pub struct FaceArgs {
    #[arg(long, value_enum)]
    pub kind: FaceKind,
    #[arg(long)]
    pub p: usize,
    /// Node order for an order face, e.g. `a,b,c`; default is alphabetical.
    #[arg(long)]
    pub order: Option<String>,
    /// Sink node for a sink face; default `a`.
    #[arg(long)]
    pub sink: Option<String>,
}

#[derive(Args, Debug)]
pub struct GadgetArgs {
    /// Edge list, one `u v` pair per line. Without it a random graph is used.
    #[arg(long)]
    pub graph: Option<PathBuf>,
    /// Vertex count of the random graph.
    #[arg(long, default_value_t = 5)]
    pub random_n: usize,
    #[arg(long)]
    pub k: usize,
    /// Run exact separation on the gadget point.
    #[arg(long)]
    pub separate: bool,
}

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "fncomp", version, about = "Rate regions for computing a function of two correlated sources")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Seed for restarts and random witnesses.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Largest graph the enumerators accept.
    #[arg(long, global = true)]
    pub vertex_cap: Option<usize>,
    /// Random restarts per solve.
    #[arg(long, global = true)]
    pub restarts: Option<usize>,
    /// Sweep directions: `default`, a comma list, or `log:LO:HI:N`.
    #[arg(long, global = true)]
    pub lambdas: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// Problem file (JSON).
    #[arg(long)]
    pub problem: Option<PathBuf>,
    /// Bundled fixture: ex1, ex2[:p], ex3, ex4, inv, const.
    #[arg(long)]
    pub fixture: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Load a problem and report its structure and hypotheses.
    Validate(Source),
    /// Build a characteristic graph.
    Graph(GraphArgs),
    /// Enumerate independent sets, maximal ones, or multisets.
    Sets(SetsArgs),
    /// Conditional or joint graph entropy.
    Entropy(EntropyArgs),
    /// Inner bound region.
    Inner(InnerArgs),
    /// Outer bound region.
    Outer(Source),
    /// Any region kind.
    Region(RegionArgs),
    /// Compare two regions by support function.
    Compare(CompareArgs),
    /// Run the law checkers on seeded witnesses.
    Laws(LawsArgs),
    /// Print a bundled fixture as a problem file.
    Fixture(FixtureArgs),
}

#[derive(Debug, Args)]
pub struct GraphArgs {
    #[command(flatten)]
    pub source: Source,
    /// Target source (X or Y).
    #[arg(long, default_value = "X")]
    pub target: String,
    /// Conditioning roles, e.g. `Y,Z`. Defaults to the other source and Z.
    #[arg(long)]
    pub given: Option<String>,
    /// Joint graph G_{X,Y|Z} instead.
    #[arg(long, conflicts_with_all = ["target", "given", "masks"])]
    pub joint: bool,
    /// Generalized graph induced by message supports over the target,
    /// written `0,1;2` (labels, `;` between values).
    #[arg(long)]
    pub masks: Option<String>,
}

#[derive(Debug, Args)]
pub struct SetsArgs {
    #[command(flatten)]
    pub source: Source,
    #[arg(long, default_value = "X")]
    pub target: String,
    #[arg(long)]
    pub given: Option<String>,
    /// Only the maximal independent sets.
    #[arg(long, conflicts_with_all = ["all", "multiset"])]
    pub maximal: bool,
    /// Only the independent sets.
    #[arg(long, conflicts_with = "multiset")]
    pub all: bool,
    /// Enumerate multisets of this total count.
    #[arg(long, alias = "multisets")]
    pub multiset: Option<usize>,
    /// Comma list of reductions: cover, merge, prune, or `none`.
    #[arg(long, default_value = "cover,merge")]
    pub reductions: String,
}

#[derive(Debug, Args)]
pub struct EntropyArgs {
    #[command(flatten)]
    pub source: Source,
    #[arg(long, default_value = "X")]
    pub target: String,
    #[arg(long)]
    pub given: Option<String>,
    /// H_G(X,Y|Z) on the joint graph.
    #[arg(long, conflicts_with_all = ["target", "given", "oracle"])]
    pub joint: bool,
    /// maximal, all or multiset:K.
    #[arg(long, alias = "family", default_value = "maximal")]
    pub mode: String,
    /// Also run the grid oracle with this many steps per axis.
    #[arg(long)]
    pub oracle: Option<usize>,
}

#[derive(Debug, Args)]
pub struct InnerArgs {
    #[command(flatten)]
    pub source: Source,
    /// maximal, all, multiset or multiset:KV[,KW].
    #[arg(long, default_value = "all")]
    pub mode: String,
}

#[derive(Debug, Args)]
#[group(id = "kind", required = true, multiple = false)]
pub struct RegionKindArgs {
    #[arg(long)]
    pub inner: bool,
    #[arg(long)]
    pub outer: bool,
    /// Exact region for conditionally independent sources.
    #[arg(long)]
    pub independent: bool,
    /// Exact region for a partially invertible function.
    #[arg(long)]
    pub pi: bool,
    /// Slepian-Wolf region.
    #[arg(long)]
    pub sw: bool,
    /// Korner-Marton region.
    #[arg(long)]
    pub km: bool,
}

#[derive(Debug, Args)]
pub struct RegionArgs {
    #[command(flatten)]
    pub source: Source,
    #[command(flatten)]
    pub kind: RegionKindArgs,
    /// Inner bound mode.
    #[arg(long, default_value = "all")]
    pub mode: String,
    /// Source the function is invertible with respect to (--pi).
    #[arg(long, default_value = "X")]
    pub wrt: String,
    /// Multiset count for --pi; defaults to the other alphabet size + 1.
    #[arg(long)]
    pub k: Option<usize>,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub source: Source,
    /// First region: inner[:MODE], outer, independent, pi[:X|Y[:K]], sw, km.
    #[arg(long)]
    pub a: String,
    /// Second region, same syntax.
    #[arg(long)]
    pub b: String,
    #[arg(long, default_value_t = 257)]
    pub directions: usize,
    #[arg(long, default_value_t = 1e-3)]
    pub tol: f64,
    /// Check that A sits strictly inside B, rerunning with doubled budgets.
    #[arg(long)]
    pub confirm: bool,
}

#[derive(Debug, Args)]
pub struct LawsArgs {
    #[command(flatten)]
    pub source: Source,
    /// Witnesses per kind.
    #[arg(long, default_value_t = 200)]
    pub seeds: usize,
    /// Most covering subfamilies per side for the condition-order check.
    #[arg(long, default_value_t = 4096)]
    pub subfamily_budget: usize,
}

#[derive(Debug, Args)]
pub struct FixtureArgs {
    /// Fixture name; omit with --list.
    pub name: Option<String>,
    /// List the bundled fixtures.
    #[arg(long)]
    pub list: bool,
}

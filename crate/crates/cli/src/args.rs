use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use egyfrac::operators::OperatorSet;
use egyfrac::{Natural, PartsParity, Ratio};

#[derive(Debug, Parser)]
#[command(
    name = "egyfrac",
    version,
    about = "Exact enumeration and operator calculus for Egyptian fractions",
    after_help = "Rationals are written a/b (or a for integers); output values are decimal strings, tallies such as count and nodes are JSON numbers.\n\
                  Precedence: command-line flag, then environment variable, then --config file, then default.\n\
                  Exit status: 0 complete, 2 incomplete (a limit was hit), 3 usage error, 4 precondition or validation error."
)]
pub struct Cli {
    /// key = value file mirroring the long flag names.
    #[arg(long, global = true, env = "EGYFRAC_CONFIG", value_name = "FILE")]
    pub config: Option<PathBuf>,

    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Worker threads for searches [default: available cores].
    #[arg(long, global = true, env = "EGYFRAC_THREADS")]
    pub threads: Option<usize>,

    /// Stop after visiting this many search nodes or operator applications.
    #[arg(long, global = true, env = "EGYFRAC_NODE_BUDGET")]
    pub node_budget: Option<u64>,

    /// Stop after this many results.
    #[arg(long, global = true, env = "EGYFRAC_MAX_RESULTS")]
    pub max_results: Option<u64>,

    /// Reject denominators above this value.
    #[arg(long, global = true, env = "EGYFRAC_MAX_DENOMINATOR")]
    pub max_denominator: Option<Natural>,

    /// Write a progress record to stderr every N search nodes.
    #[arg(long, global = true, env = "EGYFRAC_PROGRESS_EVERY", conflicts_with = "no_progress")]
    pub progress_every: Option<u64>,

    /// Suppress progress records, overriding the config file.
    #[arg(long, global = true)]
    pub no_progress: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Jsonl,
    Csv,
    Human,
}

impl Format {
    pub fn name(self) -> &'static str {
        match self {
            Format::Jsonl => "jsonl",
            Format::Csv => "csv",
            Format::Human => "human",
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List every k-part representation of a target.
    Enumerate(SearchArgs),
    /// Count k-part representations without listing them.
    Count(SearchArgs),
    /// Apply one γ or O step to a representation.
    Apply(ApplyArgs),
    /// Breadth-first closure of a seed under γ and/or O.
    Closure(ClosureArgs),
    /// k-part representations of 1/u that a closure from (u) never reaches.
    Gaps(GapsArgs),
    /// The first-part tree count s(k) for 1/u.
    LowerBound(LowerBoundArgs),
    /// Shallowest operator path to a denominator coprime to the seed's.
    CoprimeSearch(CoprimeArgs),
    /// Search 1 = Σ 1/u_i over distinct odd u_i ≥ 3 for each part count.
    ShiuVerify(ShiuArgs),
    /// σ_s(n) for s in {-1, 0, 1}.
    Sigma(SigmaArgs),
    /// The divisor representation of 1 for a perfect number.
    PerfectRep(PerfectArgs),
    /// Divisor coverage of a representation of 1.
    Analyze(AnalyzeArgs),
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("goal").required(true).args(["target", "u"])))]
pub struct SearchArgs {
    /// Target rational a/b.
    #[arg(long)]
    pub target: Option<Ratio>,
    /// Shorthand for --target 1/U.
    #[arg(long)]
    pub u: Option<Natural>,
    /// Number of parts k.
    #[arg(long, short = 'k')]
    pub parts: usize,
    #[command(flatten)]
    pub profile: ProfileArgs,
}

#[derive(Debug, Clone, Default, Args)]
pub struct ProfileArgs {
    /// Require pairwise distinct denominators.
    #[arg(long)]
    pub distinct: bool,
    /// Require odd denominators.
    #[arg(long)]
    pub odd_only: bool,
    #[arg(long)]
    pub min_denominator: Option<Natural>,
    /// Required parity of the part count.
    #[arg(long)]
    pub parts_parity: Option<PartsParity>,
    /// Reject representations whose lcm is a multiple of N (repeatable).
    #[arg(long, value_delimiter = ',', value_name = "N")]
    pub forbid_lcm_divisible_by: Vec<Natural>,
}

/// A representation given by its denominators; the target is their sum.
#[derive(Debug, Args)]
pub struct SeedArgs {
    /// Denominators, comma separated, e.g. 13,65.
    #[arg(long, value_delimiter = ',', num_args = 1.., required_unless_present = "u", conflicts_with = "u")]
    pub denoms: Vec<Natural>,
    /// Seed (u).
    #[arg(long)]
    pub u: Option<Natural>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OpKind {
    Gamma,
    O,
}

#[derive(Debug, Args)]
pub struct ApplyArgs {
    #[command(flatten)]
    pub seed: SeedArgs,
    #[arg(long, value_enum)]
    pub op: OpKind,
    /// γ: index of the part to split.
    #[arg(long, conflicts_with_all = ["q", "pair_index"])]
    pub part: Option<usize>,
    /// γ: divisor of the part; O: the even offset.
    #[arg(long)]
    pub d: Natural,
    /// O: the odd multiplier.
    #[arg(long)]
    pub q: Option<Natural>,
    /// O: which (s, rs) pair to swap when several occur.
    #[arg(long)]
    pub pair_index: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ClosureArgs {
    #[command(flatten)]
    pub seed: SeedArgs,
    /// Operators, comma separated: gamma, o.
    #[arg(long)]
    pub ops: Option<OperatorSet>,
    #[arg(long)]
    pub depth: Option<usize>,
    #[arg(long)]
    pub max_parts: Option<usize>,
}

#[derive(Debug, Args)]
pub struct GapsArgs {
    #[arg(long)]
    pub u: Natural,
    #[arg(long, short = 'k')]
    pub parts: usize,
    #[arg(long)]
    pub ops: Option<OperatorSet>,
    /// Closure depth [default: parts - 1].
    #[arg(long)]
    pub depth: Option<usize>,
}

#[derive(Debug, Args)]
pub struct LowerBoundArgs {
    #[arg(long)]
    pub u: Natural,
    #[arg(long, short = 'k')]
    pub parts: usize,
    /// Also build the tree and list its distinct leaves and repeated ones.
    #[arg(long)]
    pub tree: bool,
}

#[derive(Debug, Args)]
pub struct CoprimeArgs {
    #[command(flatten)]
    pub seed: SeedArgs,
    #[arg(long)]
    pub ops: Option<OperatorSet>,
    #[arg(long)]
    pub depth: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ShiuArgs {
    /// Largest part count to search.
    #[arg(long)]
    pub max_parts: usize,
    #[arg(long, default_value_t = 3)]
    pub min_parts: usize,
    /// Allow part counts of 9 and above.
    #[arg(long)]
    pub full_nine: bool,
}

#[derive(Debug, Args)]
pub struct SigmaArgs {
    #[arg(short = 's', allow_negative_numbers = true)]
    pub s: i32,
    #[arg(short = 'n')]
    pub n: Natural,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("which").required(true).args(["n", "up_to"])))]
pub struct PerfectArgs {
    #[arg(short = 'n')]
    pub n: Option<Natural>,
    /// Every perfect n up to this bound.
    #[arg(long)]
    pub up_to: Option<u64>,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("input").required(true).args(["denoms", "seed_equation", "stdin"])))]
pub struct AnalyzeArgs {
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    pub denoms: Vec<Natural>,
    /// Use 1 = 1/3 + 1/5 + 1/7 + 1/9 + 1/11 + 1/15 + 1/35 + 1/45 + 1/231.
    #[arg(long)]
    pub seed_equation: bool,
    /// Read representation records (jsonl) from standard input.
    #[arg(long)]
    pub stdin: bool,
    /// Also report violations of this profile.
    #[command(flatten)]
    pub profile: ProfileArgs,
}

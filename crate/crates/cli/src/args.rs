use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser, Serialize)]
#[command(name = "ssbp", version, about = "Generate, reduce, solve and check Subset Sum and Bicriteria Path instances")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Debug, Args, Serialize)]
pub struct Global {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Layout of multi-instance outputs: one file with a document per line,
    /// or a directory with one document per file.
    #[arg(long, global = true, value_enum, default_value_t = Format::Jsonl)]
    pub format: Format,
    /// Write a run manifest (argv, digests, config, timings) here.
    #[arg(long, global = true)]
    pub manifest: Option<PathBuf>,
    #[command(flatten)]
    pub caps: Caps,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Jsonl,
}

#[derive(Clone, Debug, Args, Serialize)]
pub struct Caps {
    /// Largest target the Subset Sum DP accepts.
    #[arg(long, global = true, default_value_t = ssbp_core::solvers::DEFAULT_DP_CAP)]
    pub cap_dp: u64,
    /// Largest item count for meet in the middle.
    #[arg(long, global = true, default_value_t = ssbp_core::solvers::DEFAULT_MIM_CAP)]
    pub cap_mim: usize,
    /// Largest budget Joksch tabulates.
    #[arg(long, global = true, default_value_t = ssbp_core::solvers::DEFAULT_JOKSCH_CAP)]
    pub cap_joksch: u64,
    /// Largest number of distinct edge lengths for the count-vector DP.
    #[arg(long, global = true, default_value_t = ssbp_core::solvers::DEFAULT_DISTINCT_CAP)]
    pub cap_distinct: usize,
    /// Largest number of colorings the exhaustive strategy enumerates.
    #[arg(long, global = true, default_value_t = ssbp_core::threshold::DEFAULT_COLORING_CAP)]
    pub cap_colorings: u128,
    /// Largest number of joint assignments per grouped constraint.
    #[arg(long, global = true, default_value_t = ssbp_core::numeric::DEFAULT_TUPLE_CAP)]
    pub cap_tuples: u128,
    /// Largest number of instances a reduction may write.
    #[arg(long, global = true, default_value_t = 100_000)]
    pub cap_outputs: usize,
}

#[derive(Debug, Subcommand, Serialize)]
pub enum Command {
    /// Generate a seeded random instance.
    #[command(subcommand)]
    Gen(GenKind),
    /// Apply one reduction step.
    Reduce(ReduceArgs),
    /// Decide an instance. Exit code 0 means YES, 1 means NO, 2 an error.
    Solve(SolveArgs),
    /// Check certificates, average-free sets or reduction equivalences.
    #[command(subcommand)]
    Verify(VerifyMode),
    /// Timing tables as CSV.
    #[command(subcommand)]
    Bench(BenchSuite),
    /// Re-run the command recorded in a manifest and compare output digests.
    Replay {
        manifest_file: PathBuf,
    },
}

#[derive(Clone, Debug, Args, Serialize)]
pub struct OutArg {
    /// Output file; stdout when absent.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand, Serialize)]
pub enum GenKind {
    /// Random k-CNF, written as DIMACS.
    Cnf {
        #[arg(long, default_value_t = 10)]
        vars: usize,
        #[arg(long, default_value_t = 40)]
        clauses: usize,
        #[arg(long, default_value_t = 3)]
        width: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Random CSP with arity at most two. Sizes are upper bounds.
    Csp {
        #[arg(long, default_value_t = 3)]
        vars: usize,
        #[arg(long, default_value_t = 2)]
        universe_bits: u32,
        #[arg(long, default_value_t = 3)]
        constraints: usize,
        #[arg(long, default_value_t = 6)]
        tuples: usize,
        /// The three-variable CSP of the worked example.
        #[arg(long)]
        paper_example: bool,
        #[command(flatten)]
        out: OutArg,
    },
    /// Random Subset Sum, or the encoding of a random CNF.
    SubsetSum {
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        max: u64,
        /// Largest target; defaults to `n * max / 2`.
        #[arg(long)]
        max_target: Option<u64>,
        /// Chain random CNF, grouping and numeric encoding instead.
        #[arg(long)]
        from_cnf: bool,
        #[arg(long, default_value_t = 6)]
        vars: usize,
        #[arg(long, default_value_t = 8)]
        clauses: usize,
        #[arg(long, default_value_t = 3)]
        width: usize,
        /// Bits per super-variable when grouping.
        #[arg(long, default_value_t = 2)]
        group_bits: u32,
        #[arg(long, default_value_t = 0.5)]
        eps: f64,
        #[command(flatten)]
        out: OutArg,
    },
    Ksum {
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long, default_value_t = 5)]
        size: usize,
        #[arg(long, default_value_t = 100)]
        max: u64,
        #[command(flatten)]
        out: OutArg,
    },
    /// OR-bundle of random Subset Sum instances, one per line.
    Bundle {
        #[arg(long, default_value_t = 3)]
        members: usize,
        #[arg(long, default_value_t = 6)]
        n: usize,
        #[arg(long, default_value_t = 50)]
        max: u64,
        #[command(flatten)]
        out: OutArg,
    },
    Bicriteria {
        #[arg(long, default_value_t = 8)]
        n: usize,
        #[arg(long, default_value_t = 0.3)]
        edge_prob: f64,
        #[arg(long, default_value_t = 10)]
        max_weight: u64,
        #[arg(long, default_value_t = 20)]
        budget_length: u64,
        #[arg(long, default_value_t = 20)]
        budget_cost: u64,
        /// Layered DAG instead of a graph with cycles.
        #[arg(long)]
        dag: bool,
        #[command(flatten)]
        out: OutArg,
    },
    ExactKpath {
        #[arg(long, default_value_t = 3)]
        k: usize,
        /// Vertices per layer.
        #[arg(long, default_value_t = 3)]
        layer_width: usize,
        #[arg(long, default_value_t = 0.6)]
        edge_prob: f64,
        #[arg(long, default_value_t = 20)]
        w: u64,
        #[command(flatten)]
        out: OutArg,
    },
    /// k-average-free set of n elements.
    Avgfree {
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 16)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        eps: f64,
        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Step {
    Sat2csp,
    Csp2ss,
    Ss2ksum,
    Or2path,
    Ksum2path,
    DigitExpand,
    Exact2bicrit,
    Bicrit2exact,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Layout {
    Minimal,
    PaperExample,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Coloring {
    Exhaustive,
    Randomized,
}

#[derive(Clone, Debug, Args, Serialize)]
pub struct ReduceArgs {
    #[arg(value_enum)]
    pub step: Step,
    /// Input instance (DIMACS accepted for CNF).
    #[arg(long = "in", short)]
    pub input: PathBuf,
    /// Output instance; trace sidecars go next to it.
    #[arg(long, short)]
    pub out: PathBuf,
    /// sat2csp: bits per super-variable.
    #[arg(long, default_value_t = 2)]
    pub group_bits: u32,
    /// csp2ss: block layout.
    #[arg(long, value_enum, default_value_t = Layout::Minimal)]
    pub layout: Layout,
    /// csp2ss: average-free set file; built from `--eps` when absent.
    #[arg(long)]
    pub avgfree: Option<PathBuf>,
    #[arg(long, default_value_t = 0.5)]
    pub eps: f64,
    /// ss2ksum: number of groups. bicrit2exact: internal vertices.
    #[arg(long, short, default_value_t = 2)]
    pub k: usize,
    /// or2path: bound on every item and target; the bundle maximum when absent.
    #[arg(long)]
    pub m: Option<u64>,
    /// digit-expand: digits per weight.
    #[arg(long, default_value_t = 1)]
    pub tau: u32,
    #[arg(long, value_enum, default_value_t = Coloring::Exhaustive)]
    pub coloring: Coloring,
    /// Randomized coloring trials.
    #[arg(long, default_value_t = 50)]
    pub trials: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algo {
    /// Default solver for the instance type.
    Auto,
    Dp,
    Mim,
    Brute,
    Joksch,
    DistinctDp,
    ColorCoding,
}

#[derive(Clone, Debug, Args, Serialize)]
pub struct SolveArgs {
    #[arg(long, value_enum, default_value_t = Algo::Auto)]
    pub algo: Algo,
    #[arg(long = "in", short)]
    pub input: PathBuf,
    /// Bicriteria only: require exactly `k` internal vertices.
    #[arg(long, short)]
    pub k: Option<usize>,
    #[arg(long, value_enum, default_value_t = Coloring::Exhaustive)]
    pub coloring: Coloring,
    #[arg(long, default_value_t = 50)]
    pub trials: usize,
    #[command(flatten)]
    pub out: OutArg,
}

#[derive(Debug, Subcommand, Serialize)]
pub enum VerifyMode {
    /// Replay a solver's certificate against its instance.
    Certificate {
        #[arg(long = "in", short)]
        input: PathBuf,
        /// SolveResult JSON.
        #[arg(long)]
        result: PathBuf,
    },
    /// Check a set for k-average-freeness.
    Avgfree {
        /// Comma-separated elements.
        #[arg(long, value_delimiter = ',', conflicts_with = "input")]
        set: Vec<u64>,
        /// Average-free set JSON.
        #[arg(long = "in", short)]
        input: Option<PathBuf>,
        /// Order to check; the file's own order when absent.
        #[arg(long, short)]
        k: Option<usize>,
    },
    /// Run a reduction on random instances and compare oracle answers on both sides.
    Equivalence {
        #[arg(long, value_enum)]
        step: Step,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 3)]
        max_vars: usize,
    },
}

#[derive(Debug, Subcommand, Serialize)]
pub enum BenchSuite {
    /// Joksch over a grid of length budgets on one graph.
    Joksch {
        #[arg(long, value_delimiter = ',', default_values_t = [1024u64, 2048, 4096, 8192, 16384])]
        budgets: Vec<u64>,
        #[arg(long, default_value_t = 40)]
        vertices: usize,
        #[arg(long, default_value_t = 0.2)]
        edge_prob: f64,
        #[arg(long, default_value_t = 3)]
        reps: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Subset Sum DP against meet in the middle.
    DpVsMim {
        #[arg(long, value_delimiter = ',', default_values_t = [8usize, 12, 16, 20, 24])]
        items: Vec<usize>,
        #[arg(long, default_value_t = 100_000)]
        max_item: u64,
        #[command(flatten)]
        out: OutArg,
    },
}

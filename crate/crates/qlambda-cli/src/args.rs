use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

#[derive(Parser, Debug, Serialize)]
#[command(name = "qlambda", version, about = "Exact closures under a fixed-parameter extrapolation a + p(b - a)")]
pub struct Cli {
    /// Worker threads for parallel levels and searches.
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Strong PV classification of an algebraic integer.
    Classify(FieldArgs),
    /// Rank-n closure, or window-pruned saturation within a radius.
    Closure(ClosureArgs),
    /// Enumerate the unit-window model set within a radius.
    Modelset(ModelsetArgs),
    /// Search for a derivation of a target from a seed.
    Derive(DeriveArgs),
    /// Replay a derivation file and check its target.
    Replay(ReplayArgs),
    /// Closure of a regular polygon in a cyclotomic ring.
    Polygon(PolygonArgs),
    /// Polynomial groupoid: membership, levels, census, thresholds.
    Qpoly(QpolyArgs),
    /// Density certificate: cover set and seed plan for a unit.
    Density(DensityArgs),
    /// Run a named verification suite.
    Verify(VerifyArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct FieldArgs {
    /// Minimal polynomial, e.g. "x^2+3x-1" or "[-1,3,1]".
    #[arg(long)]
    pub minpoly: String,
    /// Approximate root selecting lambda: "re" or "(re,im)".
    #[arg(long, allow_hyphen_values = true)]
    pub root: String,
}

#[derive(Args, Debug, Serialize)]
pub struct BudgetArgs {
    #[arg(long, default_value_t = 200_000)]
    pub max_points: usize,
    #[arg(long, default_value_t = 16)]
    pub max_depth: usize,
    /// Bound on |x| for search frontiers.
    #[arg(long, default_value_t = 10_000)]
    pub max_abs: i64,
}

#[derive(Args, Debug, Serialize)]
pub struct OutputArgs {
    /// JSON report path; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct ClosureArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    /// Seed elements separated by ';', each a polynomial in lambda.
    #[arg(long, default_value = "0;1")]
    pub seed: String,
    #[arg(long, conflicts_with = "radius")]
    pub rank: Option<usize>,
    /// Saturate inside the seed window up to this radius.
    #[arg(long)]
    pub radius: Option<String>,
    #[command(flatten)]
    pub budget: BudgetArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Serialize)]
pub struct ModelsetArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    #[arg(long)]
    pub radius: String,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Serialize)]
pub struct DeriveArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    #[arg(long, allow_hyphen_values = true)]
    pub target: String,
    #[arg(long, default_value = "0;1")]
    pub seed: String,
    #[command(flatten)]
    pub budget: BudgetArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct ReplayArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
}

#[derive(Args, Debug, Serialize)]
pub struct PolygonArgs {
    /// Number of polygon vertices.
    #[arg(long)]
    pub n: usize,
    /// "lambda_n", "lambda_K" or a polynomial in zeta.
    #[arg(long, default_value = "lambda_n")]
    pub param: String,
    /// Order m of the ring Z[zeta_m]; defaults to n.
    #[arg(long)]
    pub ring: Option<usize>,
    #[arg(long, default_value = "8")]
    pub radius: String,
    /// Derivation depth cap.
    #[arg(long)]
    pub rank: Option<usize>,
    #[arg(long, default_value_t = 200_000)]
    pub max_points: usize,
    #[arg(long)]
    pub svg: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Serialize)]
pub struct QpolyArgs {
    /// Decide membership of a polynomial.
    #[arg(long, group = "mode")]
    pub member: Option<String>,
    /// Enumerate level n of the star basis.
    #[arg(long, group = "mode")]
    pub level: Option<usize>,
    /// Bounded census of this exact degree.
    #[arg(long, group = "mode")]
    pub census: Option<usize>,
    /// Threshold polynomial for "gamma,eps".
    #[arg(long, group = "mode")]
    pub threshold: Option<String>,
    #[arg(long, default_value_t = 4)]
    pub bound: i64,
    #[arg(long, default_value_t = 1_000_000)]
    pub max_points: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct DensityArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    /// Contracting unit; defaults to the least window unit (quadratic) or lambda.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    /// Explicit cover set, ';'-separated; otherwise computed.
    #[arg(long)]
    pub cover: Option<String>,
    /// Pool radius for the greedy cover.
    #[arg(long, default_value = "4")]
    pub pool_radius: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct VerifyArgs {
    /// Suite name, or "all".
    #[arg(long)]
    pub suite: String,
    #[arg(long, default_value_t = 20)]
    pub max_lambda: i64,
    /// Search budget of the conjecture suite.
    #[arg(long, default_value_t = 128)]
    pub max_depth: usize,
    #[arg(long, default_value_t = 1_000_000)]
    pub max_abs: i64,
    #[arg(long, default_value_t = 200_000)]
    pub max_points: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser, Serialize)]
#[command(name = "rosenthal", version, about = "SO(2n+1) characters, branching profiles and mixing bounds for rotation walks")]
pub struct Cli {
    /// Worker threads for sweeps and simulations (default: available parallelism).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(tag = "subcommand", rename_all = "kebab-case")]
pub enum Command {
    /// Exact dimension of an irrep.
    Dim(LabelArgs),
    /// Character value and ratio at a rotation angle.
    Char(CharArgs),
    /// Fourier profile (alpha, beta) of an irrep.
    Profile(LabelOut),
    /// Lemma checks over all labels within a budget.
    Lemmas(LemmasArgs),
    /// Rosenthal terms T, mu and the W values of one label.
    Terms(LabelOut),
    /// Truncated L2 bound curve.
    Bound(BoundArgs),
    /// Smallest t with the bound below a target.
    Mixtime(MixtimeArgs),
    /// P[#K >= t] after round(c t) steps.
    Censor(CensorArgs),
    /// Monte Carlo trace statistics of a walk.
    Simulate(SimulateArgs),
    /// Monte Carlo character decay against d rho^t.
    DecayCheck(DecayArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct LabelArgs {
    /// Rank n of SO(2n+1).
    #[arg(long)]
    pub n: usize,
    /// Nondecreasing label a_1,...,a_n.
    #[arg(long)]
    pub label: String,
}

#[derive(Debug, Args, Serialize)]
pub struct LabelOut {
    #[command(flatten)]
    pub label: LabelArgs,
    /// Write JSON here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct CharArgs {
    #[command(flatten)]
    pub label: LabelArgs,
    /// Rotation angle in (0, 2pi).
    #[arg(long)]
    pub theta: f64,
}

#[derive(Debug, Args, Serialize)]
pub struct BudgetArgs {
    #[arg(long)]
    pub n: usize,
    /// Largest label total a_1 + ... + a_n.
    #[arg(long)]
    pub max_sum: u64,
    /// Largest entry a_n (default: max-sum).
    #[arg(long)]
    pub max_top: Option<u32>,
}

#[derive(Debug, Args, Serialize)]
pub struct LemmasArgs {
    #[command(flatten)]
    pub budget: BudgetArgs,
    /// Truncation for the regime classification.
    #[arg(long, default_value_t = 0.5)]
    pub eps: f64,
    #[arg(long, default_value_t = rosenthal::config::LEMMA3_CONSTANT)]
    pub lemma3_constant: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LawKind {
    Fixed,
    TruncatedUniform,
    Uniform,
}

#[derive(Debug, Args, Serialize)]
pub struct LawArgs {
    /// Angle law of one step.
    #[arg(long, value_enum)]
    pub law: LawKind,
    /// Angle for the fixed law.
    #[arg(long)]
    pub theta: Option<f64>,
    /// Truncation for the truncated-uniform law.
    #[arg(long)]
    pub eps: Option<f64>,
}

#[derive(Debug, Args, Serialize)]
pub struct BoundArgs {
    #[command(flatten)]
    pub budget: BudgetArgs,
    #[command(flatten)]
    pub law: LawArgs,
    /// Step counts: `a:b`, `a:b:step` or a comma list.
    #[arg(long, default_value = "1:50")]
    pub t: String,
    /// Contributions kept per step count.
    #[arg(long, default_value_t = 3)]
    pub top_k: usize,
    /// CSV curve (stdout if neither --out nor --report is given).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Full JSON report.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct MixtimeArgs {
    #[command(flatten)]
    pub budget: BudgetArgs,
    #[command(flatten)]
    pub law: LawArgs,
    /// Target value of sqrt(bound_sq).
    #[arg(long, default_value_t = 0.25)]
    pub target: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct CensorArgs {
    #[arg(long)]
    pub c: f64,
    #[arg(long)]
    pub t: u64,
    #[arg(long)]
    pub eps: f64,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum KindArg {
    Rosenthal,
    Kac,
}

#[derive(Debug, Args, Serialize)]
pub struct WalkArgs {
    /// Matrix size N of SO(N).
    #[arg(long = "N", id = "N")]
    pub size: usize,
    #[arg(long, value_enum, default_value = "rosenthal")]
    pub kind: KindArg,
    #[command(flatten)]
    pub law: LawArgs,
    #[arg(long)]
    pub steps: usize,
    #[arg(long)]
    pub trials: u64,
    /// Base seed; trial i uses stream i.
    #[arg(long, required_unless_present = "nondeterministic")]
    pub seed: Option<u64>,
    /// Draw a fresh seed (recorded in the manifest).
    #[arg(long, conflicts_with = "seed")]
    pub nondeterministic: bool,
}

#[derive(Debug, Args, Serialize)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub walk: WalkArgs,
    /// CSV output (stdout if absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct DecayArgs {
    #[command(flatten)]
    pub walk: WalkArgs,
    /// Traceable labels to check (repeatable); default: all three.
    #[arg(long = "label")]
    pub labels: Vec<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

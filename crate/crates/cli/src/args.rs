use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "orlicz", version, about = "Discrete Orlicz spaces and the Phi-Laplacian on Cayley balls")]
pub struct Cli {
    /// Suppress human-readable summaries.
    #[arg(long, short, global = true)]
    pub quiet: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Regularity certificates, Young's inequality and the growth bounds xΦ′ ≤ KΦ and Ψ(Φ′) ≤ (K−1)Φ for an N-function.
    NfCheck(NfCheckArgs),
    /// Luxemburg and Orlicz norms of a JSON vector.
    Norm(NormArgs),
    /// Build a Cayley ball and serialize it, or re-serialize a ball file.
    Ball(BallArgs),
    /// Apply the Phi-Laplacian to a function file.
    Laplacian(LaplacianArgs),
    /// Split boundary data into an interior-supported part and a Phi-harmonic part.
    Decompose(DecomposeArgs),
    /// Capacity of the identity relative to the sphere of radius R.
    Capacity(CapacityArgs),
    /// Tabulate capacity trends or inner-ball oscillation over groups and radii.
    Experiment(ExperimentArgs),
}

#[derive(Debug, Clone, Args)]
pub struct NfArgs {
    /// Built-in N-function, e.g. `power:p=3`, `power_norm:p=2`, `cosh`, `plog:p=2`.
    #[arg(long, conflicts_with_all = ["phi_expr", "dphi_expr"])]
    pub nf: Option<String>,
    /// Expression for Phi in the variable x.
    #[arg(long, requires = "dphi_expr")]
    pub phi_expr: Option<String>,
    /// Expression for Phi' in the variable x.
    #[arg(long, requires = "phi_expr")]
    pub dphi_expr: Option<String>,
    /// Expression parameter `name=value`; repeatable.
    #[arg(long = "param", value_name = "NAME=VALUE")]
    pub params: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SchemeArg {
    GaussSeidel,
    GradientDescent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InitArg {
    Zero,
    CopyF,
}

#[derive(Debug, Clone, Args)]
pub struct SolverArgs {
    #[arg(long, value_enum, default_value = "gauss-seidel")]
    pub scheme: SchemeArg,
    #[arg(long, value_enum, default_value = "zero")]
    pub init: InitArg,
    #[arg(long, default_value_t = 1e-10)]
    pub tol_residual: f64,
    #[arg(long, default_value_t = 1e-14)]
    pub tol_energy: f64,
    #[arg(long, default_value_t = 100_000)]
    pub max_sweeps: usize,
    #[arg(long, default_value_t = 1e-13)]
    pub inner_tol: f64,
}

#[derive(Debug, Clone, Args)]
pub struct BallSel {
    /// Group spec: `z:d`, `free:k`, `prod(a,b)` or `lamplighter`.
    #[arg(long)]
    pub group: String,
    #[arg(long)]
    pub radius: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct NfCheckArgs {
    #[command(flatten)]
    pub nf: NfArgs,
    /// Cutoff of the small-x scan grid.
    #[arg(long, default_value_t = 1.0)]
    pub x0: f64,
    #[arg(long, default_value_t = 512)]
    pub grid_points: usize,
    /// Young's inequality is checked on [0, young_max]^2.
    #[arg(long, default_value_t = 5.0)]
    pub young_max: f64,
    #[arg(long, default_value_t = 100)]
    pub young_grid: usize,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct NormArgs {
    #[command(flatten)]
    pub nf: NfArgs,
    /// JSON array of numbers, or a function object `{"ball": .., "values": [..]}`.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct BallArgs {
    #[arg(long, required_unless_present = "input", conflicts_with = "input")]
    pub group: Option<String>,
    #[arg(long, required_unless_present = "input", conflicts_with = "input")]
    pub radius: Option<usize>,
    /// Existing ball file to validate and re-serialize.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct LaplacianArgs {
    #[command(flatten)]
    pub ball: BallSel,
    #[command(flatten)]
    pub nf: NfArgs,
    /// Function file `{"ball": .., "values": [..]}`.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Boundary {
    /// Uniform values in [-1, 1] on boundary vertices, zero inside.
    Random,
    /// Values read from `--input`.
    File,
}

#[derive(Debug, Clone, Args)]
pub struct DecomposeArgs {
    #[command(flatten)]
    pub ball: BallSel,
    #[command(flatten)]
    pub nf: NfArgs,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[arg(long, value_enum, default_value = "random")]
    pub boundary: Boundary,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Function file used with `--boundary file`.
    #[arg(long, required_if_eq("boundary", "file"))]
    pub input: Option<PathBuf>,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct CapacityArgs {
    #[command(flatten)]
    pub ball: BallSel,
    #[command(flatten)]
    pub nf: NfArgs,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct ExperimentArgs {
    /// `capacity_trend` or `flatten_test`.
    #[arg(long)]
    pub kind: String,
    /// Comma-separated group specs; `prod(a,b)` commas are kept together.
    #[arg(long)]
    pub groups: String,
    #[arg(long, value_delimiter = ',', required = true)]
    pub radii: Vec<usize>,
    #[command(flatten)]
    pub nf: NfArgs,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

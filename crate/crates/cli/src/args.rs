use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hessflag_core::{HessenbergFunction, Permutation};

#[derive(Debug, Parser)]
#[command(
    name = "hessflag",
    version,
    about = "Singular permutation flags and normality of regular nilpotent Hessenberg varieties"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Worker threads for batch work (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    /// Lift the size caps (HESSFLAG_MAX_N also overrides them).
    #[arg(long, global = true)]
    pub unsafe_n: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether one permutation flag is a singular point.
    Classify(ClassifyArgs),
    /// Report every permutation flag, the codimension-one cells and normality.
    Variety(VarietyArgs),
    /// One JSON-lines record per Hessenberg function of size n.
    Atlas(AtlasArgs),
    /// The permutations indexing codimension-one cells.
    Codim1(Codim1Args),
    /// Dump the local equations (or their Jacobian) at a permutation flag.
    Generators(GeneratorsArgs),
    /// Cross-check the independent computations exhaustively up to a size.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    /// Hessenberg function, e.g. 3,3,4,5,5
    #[arg(long = "h", value_parser = parse_h)]
    pub h: HessenbergFunction,
    /// Permutation in one-line notation, e.g. 32154
    #[arg(long = "w", value_parser = parse_w)]
    pub w: Permutation,
    /// Also compute the Jacobian rank at the flag and compare.
    #[arg(long)]
    pub verify_jacobian: bool,
    /// Seed of the cell-point sampler used for indeterminate cells.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct VarietyArgs {
    #[arg(long = "h", value_parser = parse_h)]
    pub h: HessenbergFunction,
    #[arg(long)]
    pub verify_jacobian: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct AtlasArgs {
    #[arg(long)]
    pub n: usize,
    /// Output file (default: standard output).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Add a Unix timestamp to every record.
    #[arg(long)]
    pub timestamps: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct Codim1Args {
    #[arg(long = "h", value_parser = parse_h)]
    pub h: HessenbergFunction,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct GeneratorsArgs {
    #[arg(long = "h", value_parser = parse_h)]
    pub h: HessenbergFunction,
    #[arg(long = "w", value_parser = parse_w)]
    pub w: Permutation,
    /// Only the equation g[i,j], e.g. --entry 2,5
    #[arg(long, value_parser = parse_entry)]
    pub entry: Option<(usize, usize)>,
    /// Dump the symbolic Jacobian instead of the equations.
    #[arg(long, conflicts_with = "entry")]
    pub jacobian: bool,
    /// With --jacobian, evaluate it at the permutation flag.
    #[arg(long, requires = "jacobian")]
    pub at_flag: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Largest n to check exhaustively.
    #[arg(long = "n-max", alias = "n")]
    pub n_max: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

fn parse_h(s: &str) -> Result<HessenbergFunction, String> {
    s.parse().map_err(|e: hessflag_core::Error| e.to_string())
}

fn parse_w(s: &str) -> Result<Permutation, String> {
    s.parse().map_err(|e: hessflag_core::Error| e.to_string())
}

fn parse_entry(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected i,j but found {s:?}"))?;
    let i = a
        .trim()
        .parse()
        .map_err(|_| format!("invalid row index {a:?}"))?;
    let j = b
        .trim()
        .parse()
        .map_err(|_| format!("invalid column index {b:?}"))?;
    Ok((i, j))
}

//! `realpencil`: topology, totally real pencils and quintic verdicts for real
//! plane curves given by exact coefficients.

mod commands;
mod render;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use realpencil::topology::DEFAULT_SEED;

/// Exit codes. Usage errors from argument parsing also exit with 2.
pub mod exit {
    pub const OK: u8 = 0;
    pub const FAILURE: u8 = 1;
    pub const PARSE: u8 = 2;
    pub const SINGULAR: u8 = 3;
    pub const INVALID: u8 = 4;
    pub const NOT_TOTALLY_REAL: u8 = 10;
    pub const EXHAUSTED: u8 = 11;
}

#[derive(Parser, Debug)]
#[command(name = "realpencil", version, about = "Exact topology and totally real pencils of real plane curves")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Seed for every random chart, shear and jitter.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Where to write the artifact of the command.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Add wall-clock timings to the report (makes it non-deterministic).
    #[arg(long, global = true)]
    pub timings: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Machine,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Components, kinds and nesting of the real locus.
    Topology { curve: PathBuf },
    #[command(subcommand)]
    Pencil(PencilCommand),
    #[command(subcommand)]
    Quintic(QuinticCommand),
    /// Harnack and Gabard bounds, sepgon range and semigroup cones.
    Bounds(BoundsArgs),
    /// SVG picture of the curve with optional overlays.
    Render(RenderArgs),
    #[command(subcommand)]
    Fixtures(FixturesCommand),
}

#[derive(Subcommand, Debug)]
pub enum PencilCommand {
    /// Pencil of curves of a given degree through explicit points.
    Build {
        curve: PathBuf,
        /// Points as `x:y:z`, separated by commas.
        #[arg(long)]
        points: String,
        #[arg(long, default_value = "auto")]
        degree: String,
    },
    /// Decide whether every member meets the curve in real points only.
    Certify { curve: PathBuf, pencil: PathBuf },
    /// Look for totally real pencils through one point per component.
    Search(SearchArgs),
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    pub curve: PathBuf,
    #[arg(long, value_enum, default_value_t = Strategy::Auto)]
    pub strategy: Strategy,
    #[arg(long, default_value = "auto")]
    pub degree: String,
    /// Base configurations to try.
    #[arg(long, default_value_t = 50)]
    pub budget: usize,
    /// Stop after this many certified pencils.
    #[arg(long, default_value_t = 1)]
    pub max_results: usize,
    /// Directory receiving every certified pencil and certificate.
    #[arg(long)]
    pub save_all: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Strategy {
    /// Points from the curve file when it lists some, witnesses otherwise.
    Auto,
    Points,
    Witness,
}

#[derive(Subcommand, Debug)]
pub enum QuinticCommand {
    /// Convex or non-convex position of the ovals, and what it implies.
    Classify {
        curve: PathBuf,
        /// Skip the orientation of the real locus for separating quintics.
        #[arg(long)]
        no_orientation: bool,
        /// Base configurations tried when looking for an orienting pencil.
        #[arg(long, default_value_t = 20)]
        budget: usize,
    },
}

#[derive(Args, Debug)]
pub struct BoundsArgs {
    #[arg(long)]
    pub degree: Option<u32>,
    #[arg(long)]
    pub genus: Option<usize>,
    #[arg(long)]
    pub components: Option<usize>,
    /// Degree partition, comma separated.
    #[arg(long)]
    pub partition: Option<String>,
    /// What is known about the separating gonality: `g`, `g-1` or `unknown`.
    #[arg(long, default_value = "unknown")]
    pub case: String,
}

#[derive(Args, Debug)]
pub struct RenderArgs {
    pub curve: PathBuf,
    #[arg(long)]
    pub pencil: Option<PathBuf>,
    /// Machine report of `quintic classify`.
    #[arg(long)]
    pub verdict: Option<PathBuf>,
    /// Number of pencil members drawn.
    #[arg(long, default_value_t = 8)]
    pub members: usize,
    /// Half-width of the square affine window.
    #[arg(long, default_value_t = 8.0)]
    pub window: f64,
}

#[derive(Subcommand, Debug)]
pub enum FixturesCommand {
    /// Names of the shipped curves.
    List,
    /// Print one shipped curve file.
    Show { name: String },
    /// Write every shipped curve into a directory.
    Write { dir: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    ExitCode::from(commands::run(cli))
}

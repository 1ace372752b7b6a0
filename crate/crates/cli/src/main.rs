//! `reflex`: simulate and analyse reflexive two-map systems from the shell.

mod commands;
mod failure;
mod scenario;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use failure::EXIT_PARSE;

#[derive(Debug, Parser)]
#[command(
    name = "reflex",
    version,
    about = "Reflexive dynamical systems: y = f(x), x = phi(y)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Iterate the system and write the orbit as CSV.
    Simulate(SimulateArgs),
    /// List fixed points with multipliers and stability.
    FixedPoints(FixedPointArgs),
    /// Sampled distance between phi and the inverse of f.
    Distance(DistanceArgs),
    /// Detect a periodic cycle of the composite map.
    Period(PeriodArgs),
    /// Detect boom-bust episodes in a simulated orbit.
    BoomBust(BoomBustArgs),
    /// Check whether h conjugates f to g.
    Conjugacy(ConjugacyArgs),
    /// Render a staircase (cobweb) diagram as SVG.
    Staircase(StaircaseArgs),
    /// Render the phase portrait of an orbit as SVG.
    Portrait(PortraitArgs),
}

/// Flags shared by every command that builds a system.
#[derive(Debug, Clone, Args)]
pub struct SystemArgs {
    /// JSON scenario file; inline flags override its fields.
    #[arg(long, value_name = "PATH")]
    pub scenario: Option<PathBuf>,
    /// Response function f, in terms of x.
    #[arg(long = "f", value_name = "EXPR")]
    pub f: Option<String>,
    /// Feedback function phi, in terms of y.
    #[arg(long = "phi", value_name = "EXPR")]
    pub phi: Option<String>,
    /// Domain of x.
    #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_negative_numbers = true)]
    pub domain: Option<Vec<f64>>,
    /// Domain of y; defaults to the image of the x domain under f.
    #[arg(long = "y-domain", num_args = 2, value_names = ["LO", "HI"], allow_negative_numbers = true)]
    pub y_domain: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Args)]
pub struct OrbitArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub x0: Option<f64>,
    #[arg(long)]
    pub steps: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct OutArgs {
    /// Write to this file instead of stdout.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    #[command(flatten)]
    pub orbit: OrbitArgs,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Clone, Args)]
pub struct FixedPointArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    /// Grid points scanned for sign changes.
    #[arg(long)]
    pub grid: Option<usize>,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Clone, Args)]
pub struct DistanceArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    #[arg(long)]
    pub samples: Option<usize>,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Clone, Args)]
pub struct PeriodArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    #[arg(long, allow_negative_numbers = true)]
    pub x0: Option<f64>,
    #[arg(long = "max-period")]
    pub max_period: Option<usize>,
    #[arg(long = "burn-in")]
    pub burn_in: Option<usize>,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Clone, Args)]
pub struct BoomBustArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    #[command(flatten)]
    pub orbit: OrbitArgs,
    #[arg(long = "min-run")]
    pub min_run: Option<usize>,
    #[arg(long = "retrace-threshold")]
    pub retrace_threshold: Option<f64>,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ConjugacyArgs {
    #[arg(long = "f", value_name = "EXPR")]
    pub f: String,
    #[arg(long = "g", value_name = "EXPR")]
    pub g: String,
    /// Candidate conjugating homeomorphism.
    #[arg(long = "h", value_name = "EXPR")]
    pub h: String,
    #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_negative_numbers = true)]
    pub domain: Option<Vec<f64>>,
    #[arg(long)]
    pub samples: Option<usize>,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Clone, Args)]
pub struct RenderArgs {
    #[arg(long)]
    pub width: Option<u32>,
    #[arg(long)]
    pub height: Option<u32>,
    #[arg(long)]
    pub margin: Option<u32>,
}

#[derive(Debug, Clone, Args)]
pub struct StaircaseArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    #[command(flatten)]
    pub orbit: OrbitArgs,
    #[command(flatten)]
    pub render: RenderArgs,
    #[arg(long = "curve-samples")]
    pub curve_samples: Option<usize>,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Clone, Args)]
pub struct PortraitArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    #[command(flatten)]
    pub orbit: OrbitArgs,
    #[command(flatten)]
    pub render: RenderArgs,
    #[command(flatten)]
    pub out: OutArgs,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_PARSE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match cli.command {
        Command::Simulate(a) => commands::simulate(&a),
        Command::FixedPoints(a) => commands::fixed_points(&a),
        Command::Distance(a) => commands::distance(&a),
        Command::Period(a) => commands::period(&a),
        Command::BoomBust(a) => commands::boom_bust(&a),
        Command::Conjugacy(a) => commands::conjugacy(&a),
        Command::Staircase(a) => commands::staircase(&a),
        Command::Portrait(a) => commands::portrait(&a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code)
        }
    }
}

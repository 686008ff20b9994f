mod commands;
mod settings;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, CommandFactory, Parser, Subcommand};

use settings::List;

/// Time-of-arrival operator on the circle and waiting-screen simulations.
#[derive(Debug, Parser)]
#[command(name = "toa", version)]
pub struct Cli {
    /// Flat `key = value` file; command-line flags win over its entries.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build the arrival-time operator and write it to a file.
    Build(BuildArgs),
    /// Diagonalize a stored operator.
    Spectrum(SpectrumArgs),
    /// Simulate the waiting screen on a Gaussian packet.
    Screen(ScreenArgs),
    /// Absorption probability at a fixed time under ever denser measurements.
    Zeno(ZenoArgs),
    /// Entrywise difference between the quadrature and closed-form operators.
    Compare(CompareArgs),
}

#[derive(Debug, Args)]
pub struct PhysicsArgs {
    #[arg(long)]
    mass: Option<f64>,
    #[arg(long)]
    radius: Option<f64>,
    #[arg(long)]
    hbar: Option<f64>,
}

#[derive(Debug, Args)]
pub struct OperatorArgs {
    /// Angular-momentum cutoff N; the basis is k = -N..=N.
    #[arg(long)]
    nmax: Option<usize>,
    /// Regulator g at L = 0: `const:<c>` or `cos:<a>:<b>` for a + b cos(theta).
    #[arg(long)]
    g: Option<String>,
    /// `gauss-legendre` or `trapezoid-periodic`.
    #[arg(long)]
    quadrature: Option<String>,
    #[arg(long)]
    nodes: Option<usize>,
    #[command(flatten)]
    physics: PhysicsArgs,
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    #[command(flatten)]
    op: OperatorArgs,
    /// `symmetric` or `weyl`.
    #[arg(long)]
    kernel: Option<String>,
    /// `quadrature` or `closed-form` (symmetric kernel only).
    #[arg(long)]
    method: Option<String>,
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    /// Operator file written by `build`.
    #[arg(long)]
    operator: Option<PathBuf>,
    #[arg(long, short)]
    out: Option<PathBuf>,
    /// Thresholds for the |tau_k| > lambda counts, comma separated.
    #[arg(long)]
    lambda: Option<List<f64>>,
    /// Eigenvalues with |tau| at most this are counted as zero.
    #[arg(long)]
    zero_tol: Option<f64>,
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PacketArgs {
    #[arg(long)]
    nmax: Option<usize>,
    /// Mean angular momentum of the packet.
    #[arg(long, allow_hyphen_values = true)]
    k_mean: Option<f64>,
    /// Momentum spread of the packet.
    #[arg(long)]
    spread: Option<f64>,
    /// Packet centre angle.
    #[arg(long, allow_hyphen_values = true)]
    theta0: Option<f64>,
    /// Screen arc `a,b` with -pi <= a < b <= pi.
    #[arg(long, allow_hyphen_values = true)]
    arc: Option<List<f64>>,
    #[command(flatten)]
    physics: PhysicsArgs,
}

#[derive(Debug, Args)]
pub struct ScreenArgs {
    #[command(flatten)]
    packet: PacketArgs,
    /// Time between measurements.
    #[arg(long)]
    eta: Option<f64>,
    /// Number of measurements after the one at t = 0.
    #[arg(long)]
    steps: Option<usize>,
    /// `projector` or `complex:<V0>`.
    #[arg(long)]
    absorber: Option<String>,
    /// Run despite eta <= tau_z.
    #[arg(long)]
    zeno_override: bool,
    /// Sum of P_j at or above 1 - tol classifies the run as POV.
    #[arg(long)]
    pov_tol: Option<f64>,
    /// Use these probabilities (comma separated, or a run-record CSV) instead of simulating.
    #[arg(long)]
    replay: Option<String>,
    /// CSV destination; standard output when absent.
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ZenoArgs {
    #[command(flatten)]
    packet: PacketArgs,
    /// Total time t.
    #[arg(long)]
    time: Option<f64>,
    /// Explicit step counts, comma separated.
    #[arg(long)]
    n_list: Option<List<usize>>,
    /// Doubling ladder 1, 2, 4, ... up to this count (default 256).
    #[arg(long)]
    ladder: Option<usize>,
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    op: OperatorArgs,
    /// Largest accepted entrywise difference.
    #[arg(long)]
    tolerance: Option<f64>,
}

#[derive(Debug)]
pub enum CliError {
    /// Bad or inconsistent configuration (exit 2).
    Usage(String),
    /// A required setting given neither as flag nor in the config (exit 2).
    Missing(String),
    /// A numerical check failed (exit 1).
    Numeric(String),
}

impl From<circle_toa::Error> for CliError {
    fn from(e: circle_toa::Error) -> Self {
        use circle_toa::Error as E;
        match e {
            E::NonHermitian { .. }
            | E::NoConvergence(_)
            | E::ContractionViolation(_)
            | E::NotNormalized(_) => CliError::Numeric(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = settings::Settings::load(cli.config.as_deref()).and_then(|s| match &cli.command {
        Command::Build(a) => commands::build(a, &s),
        Command::Spectrum(a) => commands::spectrum(a, &s),
        Command::Screen(a) => commands::screen(a, &s),
        Command::Zeno(a) => commands::zeno(a, &s),
        Command::Compare(a) => commands::compare(a, &s),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Missing(key)) => Cli::command()
            .error(
                clap::error::ErrorKind::MissingRequiredArgument,
                format!("--{key} is required (flag or config entry)"),
            )
            .exit(),
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Numeric(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(1)
        }
    }
}

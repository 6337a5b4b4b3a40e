use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod svg;

use commands::Failure;

#[derive(Parser)]
#[command(name = "billiard-beta", version, about = "Mather's β for planar billiards")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// β for each model and rotation number
    Beta(BetaArgs),
    /// Check an inequality or equality statement
    Verify(VerifyArgs),
    /// β over a Farey grid for all four models
    Sweep(SweepArgs),
    /// Twist map with a trigonometric potential against the unperturbed one
    Toy(ToyArgs),
}

#[derive(Args, Clone)]
#[group(required = false, multiple = false)]
pub struct DomainArgs {
    /// Named domain: disk:R, ellipse:A,B, gutkin:N,EPS, constant_width:EPS,N, squeezed:EPS
    #[arg(long)]
    pub domain: Option<String>,
    /// JSON file {"a0": .., "modes": [[a1, b1], ...]}
    #[arg(long)]
    pub domain_file: Option<PathBuf>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Args)]
pub struct Common {
    /// Seed for the multistart jitter
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output file (stdout when absent)
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Args)]
pub struct BetaArgs {
    #[command(flatten)]
    pub domain: DomainArgs,
    /// birkhoff, symplectic, outer or fourth; repeatable (default all)
    #[arg(long = "model")]
    pub models: Vec<String>,
    /// Rotation numbers p/q or decimals, comma separated
    #[arg(long = "rot", value_delimiter = ',', required = true)]
    pub rots: Vec<String>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args)]
pub struct VerifyArgs {
    /// T4.2, T4.3, T4.4, C6.3, P6.9, CE6.5, T6.4, T6.10, gutkin, constwidth or radon
    #[arg(long)]
    pub theorem: String,
    #[command(flatten)]
    pub domain: DomainArgs,
    /// Rotation numbers, comma separated (where the statement takes one)
    #[arg(long = "rot", value_delimiter = ',')]
    pub rots: Vec<String>,
    #[arg(long, default_value_t = 1e-6)]
    pub eq_tol: f64,
    #[arg(long, default_value_t = 1e-8)]
    pub num_tol: f64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub domain: DomainArgs,
    /// Largest denominator in the grid
    #[arg(long, default_value_t = 10)]
    pub qmax: u64,
    /// Also write an SVG plot here
    #[arg(long)]
    pub svg: Option<PathBuf>,
    /// Also write the sample Birkhoff 1/3 orbit as k,phi,x,y rows
    #[arg(long)]
    pub orbit: Option<PathBuf>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args)]
pub struct ToyArgs {
    /// Potential term N,A,B for A cos(2πNx) + B sin(2πNx); repeatable
    #[arg(long = "term", conflicts_with = "kappa")]
    pub terms: Vec<String>,
    /// Standard potential κ cos(2πx)/(2π)
    #[arg(long)]
    pub kappa: Option<f64>,
    #[arg(long, default_value_t = 10)]
    pub qmax: u64,
    #[arg(long, default_value_t = 1e-8)]
    pub num_tol: f64,
    #[command(flatten)]
    pub common: Common,
}

fn init_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var("BILLIARD_BETA_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .map_err(|_| Failure::Usage(format!("BILLIARD_BETA_THREADS must be a positive integer, got '{v}'")))?;
    if n == 0 {
        return Err(Failure::Usage("BILLIARD_BETA_THREADS must be positive".into()));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Usage(e.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let run = init_threads().and_then(|()| match &cli.command {
        Command::Beta(a) => commands::beta(a),
        Command::Verify(a) => commands::verify(a),
        Command::Sweep(a) => commands::sweep(a),
        Command::Toy(a) => commands::toy(a),
    });
    match run {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code())
        }
    }
}

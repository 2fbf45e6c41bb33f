use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use robiniso::{BoundaryParameter, Error};

mod commands;
mod report;

use report::{Format, Report};

/// Robin eigenvalues of balls, shells and domains of revolution, and the
/// bounds that connect them.
#[derive(Debug, Parser)]
#[command(name = "robiniso", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Write the report to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// First eigenvalue of the ball B_R in R^n.
    EigBall {
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
        /// Boundary parameter: a number or "dirichlet".
        #[arg(long, allow_hyphen_values = true)]
        alpha: BoundaryParameter,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// First eigenvalue of the shell R1 < |x| < R2 (Neumann inside), compared with the ball B_R2.
    EigShell {
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long)]
        inner: f64,
        #[arg(long)]
        outer: f64,
        #[arg(long, allow_hyphen_values = true)]
        alpha: BoundaryParameter,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Shell radii, parallel-set profile and the r(t) map of a domain.
    Reduce {
        #[arg(long)]
        spec: PathBuf,
        /// Coarse sampling cells along the longer side of the domain.
        #[arg(long, default_value_t = 160)]
        grid: usize,
        /// Number of distance levels.
        #[arg(long, default_value_t = 101)]
        levels: usize,
    },
    /// Direct, shell and ball eigenvalues of a domain and the bounds between them.
    Chain {
        #[arg(long)]
        spec: PathBuf,
        /// Overrides the boundary parameter of the spec.
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<BoundaryParameter>,
        /// Coarse mesh cells across the inner radius for the direct solve.
        #[arg(long, default_value_t = 12)]
        grid: usize,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// Skip the direct solve on the domain.
        #[arg(long)]
        no_direct: bool,
    },
    /// Batch runs over a one-parameter family.
    Sweep(commands::SweepArgs),
    /// Mean-curvature condition, with both conventions for the curvature bound.
    MeanCheck {
        #[arg(long)]
        spec: PathBuf,
    },
    /// Principal, mean and Gaussian curvature along the meridian.
    Curvature {
        #[arg(long)]
        spec: PathBuf,
        /// Number of meridian intervals.
        #[arg(long, default_value_t = 32)]
        grid: usize,
    },
}

/// Exit codes.
const OK: u8 = 0;
const VIOLATED: u8 = 1;
const NUMERICAL: u8 = 2;
const USAGE: u8 = 64;

pub enum Failure {
    Usage(String),
    Numerical(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidInput(_) | Error::UnsupportedDimension(_) | Error::Isoperimetric { .. } => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Numerical(e.to_string()),
        }
    }
}

/// A finished report and whether an asserted inequality failed.
pub struct Outcome {
    pub report: Report,
    pub violated: bool,
}

fn run(command: Command) -> Result<Outcome, Failure> {
    match command {
        Command::EigBall { n, radius, alpha, tol } => commands::eig_ball(n, radius, alpha, tol),
        Command::EigShell { n, inner, outer, alpha, tol } => commands::eig_shell(n, inner, outer, alpha, tol),
        Command::Reduce { spec, grid, levels } => commands::reduce(&spec, grid, levels),
        Command::Chain { spec, alpha, grid, tol, no_direct } => commands::chain(&spec, alpha, grid, tol, no_direct),
        Command::Sweep(args) => commands::sweep(&args),
        Command::MeanCheck { spec } => commands::mean_check(&spec),
        Command::Curvature { spec, grid } => commands::curvature(&spec, grid),
    }
}

fn emit(report: &Report, output: &OutputArgs) -> io::Result<()> {
    match &output.out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            report.write(&mut w, output.format)?;
            w.flush()
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            report.write(&mut lock, output.format)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { USAGE } else { OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(outcome) => {
            if let Err(e) = emit(&outcome.report, &cli.output) {
                eprintln!("error: cannot write report: {e}");
                return ExitCode::from(USAGE);
            }
            ExitCode::from(if outcome.violated { VIOLATED } else { OK })
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(USAGE)
        }
        Err(Failure::Numerical(msg)) => {
            eprintln!("numerical failure: {msg}");
            ExitCode::from(NUMERICAL)
        }
    }
}

//! `steklov`: meshes, discrete spectra, exact ball tables and eigenvalue
//! inequality checks from the command line.
//!
//! Exit codes: 0 success, 2 invalid configuration, 3 computation failure,
//! 4 a proven inequality reported `violated`.

mod commands;
mod domain;
mod error;
mod output;
mod rational;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{ball, convergence, mesh, spectrum, sweep, verify};
use error::CliError;

#[derive(Debug, Parser)]
#[command(name = "steklov", version, about = "Wentzell, Steklov and biharmonic Steklov eigenvalues and their bounds")]
struct Cli {
    /// Worker threads; defaults to the number of cores.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a triangle mesh in the plain-text mesh format.
    Mesh(mesh::MeshArgs),
    /// Compute a boundary spectrum on a mesh.
    Spectrum(spectrum::SpectrumArgs),
    /// Print exact eigenvalues and multiplicities on balls.
    Ball(ball::BallArgs),
    /// Check every inequality on one domain.
    Verify(verify::VerifyArgs),
    /// Run the inequality checks over a family of domains.
    Sweep(sweep::SweepArgs),
    /// Refinement study of one quantity.
    Convergence(convergence::ConvergenceArgs),
}

fn run(command: &Command) -> commands::Outcome {
    match command {
        Command::Mesh(a) => mesh::run(a),
        Command::Spectrum(a) => spectrum::run(a),
        Command::Ball(a) => ball::run(a),
        Command::Verify(a) => verify::run(a),
        Command::Sweep(a) => sweep::run(a),
        Command::Convergence(a) => convergence::run(a),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let outcome = match cli.jobs {
        Some(0) => Err(CliError::Config("--jobs must be at least 1".into())),
        jobs => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.unwrap_or(0))
            .build()
            .map_err(|e| CliError::Solver(format!("cannot start worker threads: {e}")))
            .and_then(|pool| pool.install(|| run(&cli.command))),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

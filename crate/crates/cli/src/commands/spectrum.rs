use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use steklov_core::eigen::{xi1_upper_bounds, BoundaryOperators, SpectralResult};
use steklov_core::geometry::{normalize_origin, OriginMode};
use steklov_core::numfmt::sig;

use super::{eigen_error, Outcome, EXIT_OK};
use crate::domain::DomainArgs;
use crate::output::{emit, field, to_json, Format};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProblemKind {
    Wentzell,
    Steklov,
    BoundaryLaplacian,
    /// Test-function upper bound for the first biharmonic Steklov eigenvalue.
    XiBound,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub domain: DomainArgs,
    #[arg(long, value_enum, default_value = "wentzell")]
    pub problem: ProblemKind,
    #[arg(long, default_value_t = 0.0)]
    pub beta: f64,
    /// Number of eigenvalues to report, counting zero modes.
    #[arg(long, default_value_t = 10)]
    pub count: usize,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn compute(args: &SpectrumArgs) -> Result<SpectralResult, crate::error::CliError> {
    let (_, mesh) = args.domain.mesh(0)?;
    if args.problem == ProblemKind::XiBound {
        let mesh = normalize_origin(&mesh, OriginMode::DomainCentroid);
        return Ok(xi1_upper_bounds(&mesh).map_err(eigen_error)?.to_spectral_result());
    }
    let ops = BoundaryOperators::new(&mesh).map_err(eigen_error)?;
    match args.problem {
        ProblemKind::Wentzell => ops.wentzell(args.beta, args.count),
        ProblemKind::Steklov => ops.steklov(args.count),
        ProblemKind::BoundaryLaplacian => ops.boundary_laplacian(args.count),
        ProblemKind::XiBound => unreachable!("handled above"),
    }
    .map_err(eigen_error)
}

/// CSV with columns `problem,index,eigenvalue,cluster,multiplicity`.
pub fn to_csv(result: &SpectralResult) -> String {
    let mut cluster = vec![(0, 1); result.eigenvalues.len()];
    for (id, group) in result.multiplicity_groups.iter().enumerate() {
        for &i in group {
            cluster[i] = (id, group.len());
        }
    }
    let label = field(&result.problem.label());
    let mut s = String::from("problem,index,eigenvalue,cluster,multiplicity\n");
    for (i, v) in result.eigenvalues.iter().enumerate() {
        let _ = writeln!(s, "{label},{i},{},{},{}", sig(*v), cluster[i].0, cluster[i].1);
    }
    s
}

pub fn run(args: &SpectrumArgs) -> Outcome {
    let result = compute(args)?;
    let text = match args.format {
        Format::Csv => to_csv(&result),
        Format::Json => to_json(&result)?,
    };
    emit(args.out.as_deref(), &text)?;
    Ok(EXIT_OK)
}

use std::path::PathBuf;

use clap::Args;
use steklov_core::bounds::{reports_to_csv, verify_domain, ProblemParams, DEFAULT_TOLERANCE};

use super::{verify_error, Outcome, EXIT_OK, EXIT_VIOLATION};
use crate::domain::DomainArgs;
use crate::output::{emit, to_json, Format};

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub domain: DomainArgs,
    #[arg(long)]
    pub beta: f64,
    /// Tension of the fourth-order problem; adds its bound evaluation.
    #[arg(long)]
    pub tau: Option<f64>,
    /// Curvature lower bound overriding the one derived from the domain.
    #[arg(long)]
    pub c: Option<f64>,
    /// Relative tolerance for equality verdicts.
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    pub tol: f64,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn run(args: &VerifyArgs) -> Outcome {
    let (spec, mesh) = args.domain.mesh(0)?;
    let params = ProblemParams { tau: args.tau, c: args.c, ..ProblemParams::euclidean(args.beta) };
    let result = verify_domain(&spec, &mesh, &params, args.tol).map_err(verify_error)?;
    let text = match args.format {
        Format::Csv => reports_to_csv(&result.reports),
        Format::Json => to_json(&result)?,
    };
    emit(args.out.as_deref(), &text)?;
    if result.has_theorem_violation() {
        for r in result.reports.iter().filter(|r| r.is_theorem_violation()) {
            eprintln!("violated: {} (lhs {:?}, rhs {:?})", r.theorem, r.lhs, r.rhs);
        }
        return Ok(EXIT_VIOLATION);
    }
    Ok(EXIT_OK)
}

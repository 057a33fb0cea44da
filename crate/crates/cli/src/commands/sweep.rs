use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use steklov_core::bounds::{verify_domain, DomainVerification, ProblemParams, DEFAULT_TOLERANCE};
use steklov_core::geometry::{generate_mesh, DomainSpec};
use steklov_core::numfmt::{sig, sig_opt};

use super::{verify_error, Outcome, EXIT_OK};
use crate::domain::geometry_error;
use crate::error::CliError;
use crate::output::{emit, field, to_json, Format};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// Ellipses `x^2/a^2 + y^2 = 1` over `--aspects`.
    Ellipse,
    /// Stars `r = 1 + eps cos(m theta)` over `--eps`.
    Star,
    /// Disks over `--radii`.
    Disk,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    #[arg(long, value_delimiter = ',', default_value = "1,1.2,1.5,2")]
    pub aspects: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_value = "0,0.02,0.05,0.1")]
    pub eps: Vec<f64>,
    #[arg(long, default_value_t = 3)]
    pub m: u32,
    #[arg(long, value_delimiter = ',', default_value = "1")]
    pub radii: Vec<f64>,
    #[arg(long, value_delimiter = ',', required = true)]
    pub betas: Vec<f64>,
    #[arg(long)]
    pub tau: Option<f64>,
    #[arg(long, default_value_t = 0.05)]
    pub h: f64,
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    pub tol: f64,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Serialize)]
pub struct SweepRow {
    pub domain: String,
    pub beta: f64,
    pub result: Option<DomainVerification>,
    pub error: Option<String>,
}

fn domains(args: &SweepArgs) -> Vec<DomainSpec> {
    match args.family {
        Family::Ellipse => args.aspects.iter().map(|&a| DomainSpec::ellipse(a, 1.0)).collect(),
        Family::Star => args.eps.iter().map(|&e| DomainSpec::star(e, args.m)).collect(),
        Family::Disk => args.radii.iter().map(|&r| DomainSpec::disk(r)).collect(),
    }
}

fn run_row(spec: &DomainSpec, beta: f64, args: &SweepArgs) -> Result<DomainVerification, CliError> {
    spec.validate().map_err(geometry_error)?;
    let mesh = generate_mesh(spec, args.h).map_err(geometry_error)?;
    let params = ProblemParams { tau: args.tau, ..ProblemParams::euclidean(beta) };
    verify_domain(spec, &mesh, &params, args.tol).map_err(verify_error)
}

/// Rows in grid order (domains outer, betas inner), computed concurrently.
pub fn rows(args: &SweepArgs) -> Vec<SweepRow> {
    let grid: Vec<(DomainSpec, f64)> =
        domains(args).into_iter().flat_map(|d| args.betas.iter().map(move |&b| (d.clone(), b))).collect();
    grid.par_iter()
        .map(|(spec, beta)| {
            let outcome = run_row(spec, *beta, args);
            if let Err(e) = &outcome {
                log::warn!("{} beta={beta}: {e}", spec.label());
            }
            let (result, error) = match outcome {
                Ok(r) => (Some(r), None),
                Err(e) => (None, Some(e.to_string())),
            };
            SweepRow { domain: spec.label(), beta: *beta, result, error }
        })
        .collect()
}

/// Long format: one line per domain, beta and inequality.
pub fn to_csv(rows: &[SweepRow]) -> String {
    let mut s = String::from("domain,beta,lambda1,p1,eta1_numeric,eta1,theorem,lhs,rhs,slack,verdict,error\n");
    for row in rows {
        let head = format!("{},{}", field(&row.domain), sig(row.beta));
        match (&row.result, &row.error) {
            (Some(v), _) => {
                for r in &v.reports {
                    let _ = writeln!(
                        s,
                        "{head},{},{},{},{},{},{},{},{},{},",
                        sig(v.lambda1),
                        sig(v.p1),
                        sig(v.eta1_numeric),
                        sig(v.eta1_closed_form),
                        r.theorem,
                        sig_opt(r.lhs),
                        sig_opt(r.rhs),
                        sig_opt(r.slack),
                        r.verdict.as_str()
                    );
                }
            }
            (None, error) => {
                let _ = writeln!(s, "{head},,,,,,,,,,{}", field(error.as_deref().unwrap_or("unknown failure")));
            }
        }
    }
    s
}

pub fn run(args: &SweepArgs) -> Outcome {
    let rows = rows(args);
    let text = match args.format {
        Format::Csv => to_csv(&rows),
        Format::Json => to_json(&rows)?,
    };
    emit(args.out.as_deref(), &text)?;
    if rows.iter().all(|r| r.result.is_none()) {
        return Err(CliError::Solver("every sweep row failed".into()));
    }
    for row in &rows {
        if let Some(v) = &row.result {
            if v.has_theorem_violation() {
                log::warn!("{} beta={}: a proven inequality reports a violation", row.domain, row.beta);
            }
        }
    }
    Ok(EXIT_OK)
}

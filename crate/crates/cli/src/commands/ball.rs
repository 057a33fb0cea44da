use std::path::PathBuf;

use clap::{Args, ValueEnum};
use num::ToPrimitive;
use serde::Serialize;
use steklov_core::ballspec::{ball_spectrum, spectrum_table_csv, BallProblem, BallSpectrumEntry, Rational};

use super::{Outcome, EXIT_OK};
use crate::error::CliError;
use crate::output::{emit, to_json, Format};
use crate::rational::parse_rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BallKind {
    All,
    Wentzell,
    Steklov,
    Xi,
    Zeta,
    TauTone,
}

#[derive(Debug, Args)]
pub struct BallArgs {
    /// Dimension of the ball.
    #[arg(long)]
    pub n: usize,
    /// Largest order `k` in the table.
    #[arg(long)]
    pub kmax: u32,
    #[arg(long, value_enum, default_value = "all")]
    pub problem: BallKind,
    /// Exact value, e.g. `0.5` or `1/3`.
    #[arg(long, value_parser = parse_rational, default_value = "1")]
    pub beta: Rational,
    #[arg(long = "R", value_parser = parse_rational, default_value = "1")]
    pub radius: Rational,
    #[arg(long, value_parser = parse_rational, default_value = "1")]
    pub tau: Rational,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Serialize)]
struct JsonEntry {
    problem: String,
    n: usize,
    k: u32,
    /// Exact value as `p/q`.
    eigenvalue: String,
    value: f64,
    multiplicity: u64,
}

fn problems(args: &BallArgs) -> Vec<BallProblem> {
    let wentzell = BallProblem::Wentzell { beta: args.beta.clone(), radius: args.radius.clone() };
    let steklov = BallProblem::Steklov { radius: args.radius.clone() };
    let tau = BallProblem::TauTone { tau: args.tau.clone(), radius: args.radius.clone() };
    match args.problem {
        BallKind::All => vec![wentzell, steklov, BallProblem::Xi, BallProblem::Zeta, tau],
        BallKind::Wentzell => vec![wentzell],
        BallKind::Steklov => vec![steklov],
        BallKind::Xi => vec![BallProblem::Xi],
        BallKind::Zeta => vec![BallProblem::Zeta],
        BallKind::TauTone => vec![tau],
    }
}

pub fn table(args: &BallArgs) -> Result<Vec<BallSpectrumEntry>, CliError> {
    let mut entries = Vec::new();
    for problem in problems(args) {
        entries.extend(ball_spectrum(&problem, args.n, args.kmax).map_err(|e| CliError::Config(e.to_string()))?);
    }
    Ok(entries)
}

pub fn run(args: &BallArgs) -> Outcome {
    let entries = table(args)?;
    let text = match args.format {
        Format::Csv => spectrum_table_csv(&entries),
        Format::Json => to_json(
            &entries
                .iter()
                .map(|e| JsonEntry {
                    problem: e.problem.label(),
                    n: e.n,
                    k: e.k,
                    eigenvalue: e.eigenvalue.to_string(),
                    value: e.eigenvalue.to_f64().unwrap_or(f64::NAN),
                    multiplicity: e.multiplicity,
                })
                .collect::<Vec<_>>(),
        )?,
    };
    emit(args.out.as_deref(), &text)?;
    Ok(EXIT_OK)
}

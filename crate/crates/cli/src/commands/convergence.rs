use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use serde::Serialize;
use steklov_core::eigen::{boundary_eta1, closed_form_eta1, xi1_upper_bounds, BoundaryOperators, SpectralResult};
use steklov_core::geometry::{normalize_origin, refine, DomainSpec, OriginMode, TriangleMesh};
use steklov_core::numfmt::{sig, sig_opt};

use super::{eigen_error, Outcome, EXIT_OK};
use crate::domain::{geometry_error, DomainArgs};
use crate::error::CliError;
use crate::output::{emit, field, to_json, Format};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    /// First nonzero Wentzell eigenvalue, one series per `--beta`.
    Lambda1,
    /// First nonzero Steklov eigenvalue.
    P1,
    /// First nonzero eigenvalue of the boundary Laplacian.
    Eta1,
    /// Test-function upper bound for the first biharmonic eigenvalue.
    Xi,
}

#[derive(Debug, Args)]
pub struct ConvergenceArgs {
    #[command(flatten)]
    pub domain: DomainArgs,
    #[arg(long, value_enum, default_value = "lambda1")]
    pub quantity: Quantity,
    #[arg(long, value_delimiter = ',', default_value = "1")]
    pub beta: Vec<f64>,
    /// Number of meshes: the initial one plus `levels - 1` uniform refinements.
    #[arg(long, default_value_t = 3)]
    pub levels: usize,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConvergenceRow {
    pub quantity: Quantity,
    pub beta: Option<f64>,
    pub level: usize,
    pub h: f64,
    pub vertices: usize,
    pub value: f64,
    pub multiplicity: Option<usize>,
    pub reference: Option<f64>,
    /// `|value - reference|`, or the change from the previous level when no
    /// reference is known.
    pub error: Option<f64>,
    pub relative_error: Option<f64>,
    /// `log2` of successive error ratios; each level halves the mesh size.
    pub rate: Option<f64>,
}

/// Exact value where one is known: disks for all quantities, any smooth
/// curve for `eta1`.
fn reference(spec: &DomainSpec, quantity: Quantity, beta: f64) -> Option<f64> {
    if quantity == Quantity::Eta1 && !matches!(spec, DomainSpec::Polygon { .. }) {
        return Some(closed_form_eta1(spec.curve_length()));
    }
    let DomainSpec::Disk { radius: r } = *spec else { return None };
    Some(match quantity {
        Quantity::Lambda1 => (beta + r) / (r * r),
        Quantity::P1 => 1.0 / r,
        Quantity::Eta1 => 1.0 / (r * r),
        Quantity::Xi => 4.0 / (r * r * r),
    })
}

fn first(result: &SpectralResult) -> Result<(f64, usize), CliError> {
    let f = result
        .first_nonzero()
        .ok_or_else(|| CliError::Solver(format!("{} has no nonzero eigenvalue", result.problem.label())))?;
    Ok((f.value, f.multiplicity))
}

/// Values at one level, one per series.
fn measure(mesh: &TriangleMesh, quantity: Quantity, betas: &[f64]) -> Result<Vec<(f64, Option<usize>)>, CliError> {
    Ok(match quantity {
        Quantity::Lambda1 => {
            let ops = BoundaryOperators::new(mesh).map_err(eigen_error)?;
            betas
                .iter()
                .map(|&b| first(&ops.wentzell(b, 6).map_err(eigen_error)?).map(|(v, m)| (v, Some(m))))
                .collect::<Result<_, _>>()?
        }
        Quantity::P1 => {
            let ops = BoundaryOperators::new(mesh).map_err(eigen_error)?;
            let (v, m) = first(&ops.steklov(6).map_err(eigen_error)?)?;
            vec![(v, Some(m))]
        }
        Quantity::Eta1 => {
            let (v, m) = first(&boundary_eta1(mesh).map_err(eigen_error)?)?;
            vec![(v, Some(m))]
        }
        Quantity::Xi => {
            let centred = normalize_origin(mesh, OriginMode::DomainCentroid);
            vec![(xi1_upper_bounds(&centred).map_err(eigen_error)?.best, None)]
        }
    })
}

pub fn rows(args: &ConvergenceArgs) -> Result<Vec<ConvergenceRow>, CliError> {
    if args.levels < 3 {
        return Err(CliError::Config(format!("--levels must be at least 3, got {}", args.levels)));
    }
    let betas: Vec<Option<f64>> = match args.quantity {
        Quantity::Lambda1 => args.beta.iter().copied().map(Some).collect(),
        _ => vec![None],
    };
    let (spec, mut mesh) = args.domain.mesh(0)?;
    let mut series: Vec<Vec<ConvergenceRow>> = vec![Vec::new(); betas.len()];
    for level in 0..args.levels {
        if level > 0 {
            mesh = refine(&mesh, &spec).map_err(geometry_error)?;
        }
        let plain: Vec<f64> = betas.iter().map(|b| b.unwrap_or(0.0)).collect();
        let values = measure(&mesh, args.quantity, &plain)
            .map_err(|e| CliError::Solver(format!("level {level}: {e}")))?;
        for ((rows, beta), (value, multiplicity)) in series.iter_mut().zip(&betas).zip(values) {
            let reference = reference(&spec, args.quantity, beta.unwrap_or(0.0));
            let error = match (reference, rows.last()) {
                (Some(r), _) => Some((value - r).abs()),
                (None, Some(prev)) => Some((value - prev.value).abs()),
                (None, None) => None,
            };
            let rate = match (rows.last().and_then(|p| p.error), error) {
                (Some(e0), Some(e1)) if e0 > 0.0 && e1 > 0.0 => Some((e0 / e1).log2()),
                _ => None,
            };
            rows.push(ConvergenceRow {
                quantity: args.quantity,
                beta: *beta,
                level,
                h: mesh.h,
                vertices: mesh.num_vertices(),
                value,
                multiplicity,
                reference,
                error,
                relative_error: reference.zip(error).map(|(r, e)| e / r.abs()),
                rate,
            });
        }
    }
    Ok(series.into_iter().flatten().collect())
}

pub fn to_csv(rows: &[ConvergenceRow]) -> String {
    let mut s = String::from("quantity,beta,level,h,vertices,value,multiplicity,reference,error,relative_error,rate\n");
    for r in rows {
        let quantity = r.quantity.to_possible_value().expect("no skipped variants");
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{},{},{},{},{}",
            field(quantity.get_name()),
            sig_opt(r.beta),
            r.level,
            sig(r.h),
            r.vertices,
            sig(r.value),
            r.multiplicity.map(|m| m.to_string()).unwrap_or_default(),
            sig_opt(r.reference),
            sig_opt(r.error),
            sig_opt(r.relative_error),
            sig_opt(r.rate)
        );
    }
    s
}

pub fn run(args: &ConvergenceArgs) -> Outcome {
    let rows = rows(args)?;
    let text = match args.format {
        Format::Csv => to_csv(&rows),
        Format::Json => to_json(&rows)?,
    };
    emit(args.out.as_deref(), &text)?;
    Ok(EXIT_OK)
}

use std::fs;
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use steklov_core::geometry::{generate_mesh, load_mesh, refine, DomainSpec, GeometryError, Point, TriangleMesh};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DomainKind {
    Disk,
    Ellipse,
    Star,
    Polygon,
    Custom,
}

/// Domain selection shared by the mesh-based subcommands.
#[derive(Debug, Clone, Args)]
pub struct DomainArgs {
    #[arg(long, value_enum)]
    pub domain: DomainKind,
    /// Disk radius.
    #[arg(long = "R")]
    pub radius: Option<f64>,
    /// Ellipse semi-axis along x.
    #[arg(long)]
    pub a: Option<f64>,
    /// Ellipse semi-axis along y.
    #[arg(long)]
    pub b: Option<f64>,
    /// Star amplitude in `r = 1 + eps cos(m theta)`.
    #[arg(long)]
    pub eps: Option<f64>,
    /// Star lobe count.
    #[arg(long)]
    pub m: Option<u32>,
    /// Polygon corners as `x,y;x,y;...`, counterclockwise.
    #[arg(long, allow_hyphen_values = true)]
    pub vertices: Option<String>,
    /// Equispaced samples of a closed curve as `x,y;x,y;...`.
    #[arg(long, allow_hyphen_values = true)]
    pub samples: Option<String>,
    /// Target mesh size.
    #[arg(long, default_value_t = 0.05)]
    pub h: f64,
    /// Read the mesh from this file instead of generating it.
    #[arg(long)]
    pub mesh_file: Option<PathBuf>,
}

fn require<T: Copy>(value: Option<T>, flag: &str, domain: &str) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::Config(format!("--domain {domain} requires --{flag}")))
}

pub fn parse_points(text: &str) -> Result<Vec<Point>, CliError> {
    text.split(';')
        .filter(|s| !s.trim().is_empty())
        .map(|pair| {
            let (x, y) = pair
                .split_once(',')
                .ok_or_else(|| CliError::Config(format!("point {pair:?} is not of the form x,y")))?;
            let parse = |s: &str| {
                s.trim().parse::<f64>().map_err(|_| CliError::Config(format!("invalid coordinate {s:?}")))
            };
            Ok([parse(x)?, parse(y)?])
        })
        .collect()
}

pub fn geometry_error(e: GeometryError) -> CliError {
    match e {
        GeometryError::MeshQuality(_) => CliError::Solver(e.to_string()),
        _ => CliError::Config(e.to_string()),
    }
}

impl DomainArgs {
    pub fn spec(&self) -> Result<DomainSpec, CliError> {
        let spec = match self.domain {
            DomainKind::Disk => DomainSpec::disk(require(self.radius, "R", "disk")?),
            DomainKind::Ellipse => DomainSpec::ellipse(require(self.a, "a", "ellipse")?, require(self.b, "b", "ellipse")?),
            DomainKind::Star => DomainSpec::star(require(self.eps, "eps", "star")?, require(self.m, "m", "star")?),
            DomainKind::Polygon => {
                let text = self.vertices.as_deref().ok_or_else(|| CliError::Config("--domain polygon requires --vertices".into()))?;
                DomainSpec::polygon(parse_points(text)?)
            }
            DomainKind::Custom => {
                let text = self.samples.as_deref().ok_or_else(|| CliError::Config("--domain custom requires --samples".into()))?;
                DomainSpec::custom(parse_points(text)?)
            }
        };
        spec.validate().map_err(geometry_error)?;
        Ok(spec)
    }

    /// The domain and its mesh, loaded or generated and refined `refinements` times.
    pub fn mesh(&self, refinements: u32) -> Result<(DomainSpec, TriangleMesh), CliError> {
        let spec = self.spec()?;
        let mut mesh = match &self.mesh_file {
            Some(path) => {
                let text = fs::read_to_string(path)
                    .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
                load_mesh(&text).map_err(geometry_error)?
            }
            None => generate_mesh(&spec, self.h).map_err(geometry_error)?,
        };
        for _ in 0..refinements {
            mesh = refine(&mesh, &spec).map_err(geometry_error)?;
        }
        log::info!(
            "{}: {} vertices, {} triangles, {} boundary vertices, h = {}",
            spec.label(),
            mesh.num_vertices(),
            mesh.num_triangles(),
            mesh.boundary_loop.len(),
            mesh.h
        );
        Ok((spec, mesh))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn points() {
        assert_eq!(parse_points("0,0; 1,0;1,1;").unwrap(), vec![[0.0, 0.0], [1.0, 0.0], [1.0, 1.0]]);
        assert!(parse_points("0,0;1").is_err());
        assert!(parse_points("0,x").is_err());
    }
}

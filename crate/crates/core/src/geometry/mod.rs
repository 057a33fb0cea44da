//! Planar domains, their triangulations and geometric summaries.

mod domain;
mod mesh;
mod mesher;
mod summary;

pub use domain::{DomainSpec, Point};
pub use mesh::{load_mesh, save_mesh, TriangleMesh};
pub use mesher::{generate_mesh, refine, MIN_ANGLE_DEGREES};
pub use summary::{
    boundary_centroid, coordinate_second_moments, domain_centroid, geometric_summary, mesh_area, normalize_origin, second_moment,
    unit_ball_volume, unit_sphere_area, GeometricSummary, OriginMode,
};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum GeometryError {
    #[error("invalid domain: {0}")]
    InvalidDomain(String),
    #[error("invalid mesh size h={h}: must lie in (0, {diameter})")]
    InvalidMeshSize { h: f64, diameter: f64 },
    #[error("invalid mesh: {0}")]
    InvalidMesh(String),
    #[error("mesh generation failed: {0}")]
    MeshQuality(String),
    #[error("mesh file line {line}: {message}")]
    Parse { line: usize, message: String },
}

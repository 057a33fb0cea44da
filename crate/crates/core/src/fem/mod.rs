//! Piecewise-linear finite elements on triangle meshes.
//!
//! Matrices realize the domain Dirichlet energy, the domain and boundary
//! `L^2` products and the tangential energy along the boundary. The
//! Laplacian is the analyst's one (`div grad`), so every assembled form is
//! positive semidefinite.

mod assembly;
mod cholesky;
mod solve;
mod sparse;

pub use assembly::{
    assemble_boundary_mass, assemble_boundary_stiffness, assemble_domain_mass, assemble_domain_stiffness,
    DofPartition,
};
pub use cholesky::EnvelopeCholesky;
pub use solve::{harmonic_extension, neumann_poisson_solve, InteriorSolver, NeumannSolution, NeumannSolver};
pub use sparse::SparseSymMatrix;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum FemError {
    #[error("triangle {index} is degenerate (signed area {area:e})")]
    DegenerateTriangle { index: usize, area: f64 },
    #[error("boundary loop is not closed: {0}")]
    OpenBoundary(String),
    #[error("matrix is not positive definite: pivot {pivot:e} at vertex {index}")]
    NotPositiveDefinite { index: usize, pivot: f64 },
    #[error("expected {expected} values, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

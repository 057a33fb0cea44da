//! Boundary eigenvalue problems reduced to dense generalized symmetric
//! eigenproblems on the boundary vertices.

mod dense;
mod spectra;
mod xi;

pub use dense::{
    cholesky_lower, max_relative_residual, multiplicity_groups, solve_generalized_symmetric, Eigenpairs,
    EIGEN_TOLERANCE,
};
pub use spectra::{
    boundary_eta1, closed_form_eta1, dtn_reduce, steklov_spectrum, wentzell_spectrum, BoundaryOperators,
    FirstNonzero, SpectralProblem, SpectralResult, MULTIPLICITY_GAP, ZERO_MODE_FRACTION,
};
pub use xi::{xi1_upper_bounds, XiBounds, NORMALIZATION_TOLERANCE};

use thiserror::Error;

use crate::fem::FemError;

#[derive(Debug, Error)]
pub enum EigenError {
    #[error(transparent)]
    Fem(#[from] FemError),
    #[error("mass matrix is not positive definite: smallest pivot {pivot:e} at row {index}")]
    NotPositiveDefinite { index: usize, pivot: f64 },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("{0} did not converge")]
    NoConvergence(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

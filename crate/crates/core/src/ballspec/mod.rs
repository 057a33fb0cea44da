//! Exact spectra and eigenfunctions on balls.
//!
//! Everything here is exact rational arithmetic on polynomials. Integrals
//! over the unit sphere and ball are rational multiples of the sphere area,
//! which cancels in every quotient, and restriction to the sphere is
//! reduction modulo `|x|^2 - 1`.

mod basis;
mod eigenfunctions;
mod moments;
mod polynomial;
mod spectrum;

pub use basis::{harmonic_basis, monomials, mu, HarmonicPolynomial};
pub use eigenfunctions::{
    biharmonic_split, check_relation, euler_apply, exact_rayleigh, psi_eigenfunction, sphere_laplacian,
    tangential_gradient_squared, verify_boundary_conditions, BiharmonicProblem, BoundaryResiduals,
};
pub use moments::{ball_moment, integrate_ball, integrate_sphere, sphere_moment};
pub use polynomial::{integer, rational, Polynomial, Rational};
pub use spectrum::{ball_eigenvalue, ball_spectrum, spectrum_table_csv, BallProblem, BallSpectrumEntry};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum BallError {
    #[error("dimension must be at least 2, got {0}")]
    InvalidDimension(usize),
    #[error("order {k} rejected: {reason}")]
    InvalidOrder { k: u32, reason: String },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("polynomial is not harmonic: {0}")]
    NotHarmonic(String),
    #[error("polynomial is not homogeneous of degree {degree}: {poly}")]
    NotHomogeneous { degree: u32, poly: String },
    #[error("polynomial is not biharmonic: {0}")]
    NotBiharmonic(String),
    #[error("Rayleigh quotient denominator vanishes for {0}")]
    ZeroDenominator(String),
    #[error(
        "nonzero residuals: bilaplacian {}, normal derivative {}, eigenvalue condition {}",
        .0.bilaplacian, .0.normal_derivative, .0.eigen_condition
    )]
    NonzeroResidual(Box<BoundaryResiduals>),
}

//! Spectral computations for Wentzell, Steklov and fourth-order Steklov problems.

pub mod ballspec;
pub mod bounds;
pub mod eigen;
pub mod fem;
pub mod geometry;
pub mod numfmt;

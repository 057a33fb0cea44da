//! Upper bounds for the first eigenvalue of the biharmonic Steklov problem
//! built from Neumann-Poisson test functions.
//!
//! For each coordinate `x_i` the solution `g_i` of `Lap g_i = x_i` with zero
//! normal derivative and zero boundary mean is a valid test function, giving
//! `xi_1 <= int x_i^2 / int_bd g_i^2`. Summing the Cauchy-Schwarz estimates
//! over coordinates gives `xi_1 <= |bd| / int rho^2`.

use serde::{Deserialize, Serialize};

use crate::fem::NeumannSolver;
use crate::geometry::{coordinate_second_moments, domain_centroid, mesh_area, TriangleMesh};

use super::{EigenError, SpectralProblem, SpectralResult};

/// Tolerated coordinate mean, relative to `area * max |x|`.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct XiBounds {
    pub per_coordinate: Vec<f64>,
    pub aggregate: f64,
    /// Smallest of all bounds.
    pub best: f64,
    /// Domain means of the coordinates removed before each solve.
    pub mean_corrections: Vec<f64>,
    pub warning: Option<String>,
    pub mesh_h: f64,
}

impl XiBounds {
    pub fn to_spectral_result(&self) -> SpectralResult {
        SpectralResult {
            problem: SpectralProblem::XiBound,
            eigenvalues: vec![self.best],
            eigenvectors: vec![],
            mesh_h: self.mesh_h,
            multiplicity_groups: vec![vec![0]],
            spectral_radius: self.best,
        }
    }
}

/// Expects a mesh whose domain centroid sits at the origin.
pub fn xi1_upper_bounds(mesh: &TriangleMesh) -> Result<XiBounds, EigenError> {
    let solver = NeumannSolver::new(mesh)?;
    let area = mesh_area(mesh);
    let reach = mesh.vertices.iter().map(|p| p[0].hypot(p[1])).fold(0.0, f64::max);
    let centroid = domain_centroid(mesh);
    let residual = centroid[0].abs().max(centroid[1].abs()) * area;
    let warning = (residual > NORMALIZATION_TOLERANCE * area * reach).then(|| {
        format!("coordinate integrals are not centred (residual {residual:e}); normalize the origin first")
    });
    if let Some(w) = &warning {
        log::warn!("{w}");
    }

    let moments = coordinate_second_moments(mesh, [0.0, 0.0]);
    let mut per_coordinate = Vec::with_capacity(2);
    let mut mean_corrections = Vec::with_capacity(2);
    for (d, moment) in moments.iter().enumerate() {
        let rhs: Vec<f64> = mesh.vertices.iter().map(|p| p[d]).collect();
        let sol = solver.solve(&rhs)?;
        let trace = solver.boundary_mass().quad_form(&sol.values);
        per_coordinate.push(moment / trace);
        mean_corrections.push(sol.mean_correction);
    }
    let perimeter: f64 = mesh
        .boundary_edges()
        .map(|(a, b)| {
            let (p, q) = (mesh.vertices[a], mesh.vertices[b]);
            (p[0] - q[0]).hypot(p[1] - q[1])
        })
        .sum();
    let aggregate = perimeter / (moments[0] + moments[1]);
    let best = per_coordinate.iter().copied().fold(aggregate, f64::min);
    Ok(XiBounds { per_coordinate, aggregate, best, mean_corrections, warning, mesh_h: mesh.h })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{generate_mesh, normalize_origin, DomainSpec, OriginMode};
    use approx::assert_relative_eq;

    #[test]
    fn unit_disk_bounds_equal_four() {
        let mesh = generate_mesh(&DomainSpec::disk(1.0), 0.05).unwrap();
        let mesh = normalize_origin(&mesh, OriginMode::DomainCentroid);
        let xi = xi1_upper_bounds(&mesh).unwrap();
        assert!(xi.warning.is_none());
        for b in &xi.per_coordinate {
            assert_relative_eq!(*b, 4.0, max_relative = 2e-2);
        }
        assert_relative_eq!(xi.aggregate, 4.0, max_relative = 2e-2);
        assert!(xi.best <= xi.aggregate);
    }

    #[test]
    fn uncentred_mesh_warns() {
        let mesh = generate_mesh(&DomainSpec::disk(1.0), 0.2).unwrap().translated([0.5, 0.0]);
        let xi = xi1_upper_bounds(&mesh).unwrap();
        assert!(xi.warning.is_some());
        assert_relative_eq!(xi.mean_corrections[0], 0.5, max_relative = 1e-9);
    }
}

use std::f64::consts::PI;

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::fem::{
    assemble_boundary_mass, assemble_boundary_stiffness, assemble_domain_stiffness, DofPartition, InteriorSolver,
    SparseSymMatrix,
};
use crate::geometry::TriangleMesh;

use super::dense::{multiplicity_groups, solve_generalized_symmetric, Eigenpairs};
use super::EigenError;

/// Default relative gap below which neighbouring eigenvalues form a cluster.
pub const MULTIPLICITY_GAP: f64 = 1e-6;

/// Eigenvalues below this fraction of the largest one count as zero modes.
pub const ZERO_MODE_FRACTION: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SpectralProblem {
    Steklov,
    Wentzell { beta: f64 },
    BoundaryLaplacian,
    XiBound,
}

impl SpectralProblem {
    pub fn label(&self) -> String {
        match self {
            SpectralProblem::Steklov => "steklov".into(),
            SpectralProblem::Wentzell { beta } => format!("wentzell(beta={beta})"),
            SpectralProblem::BoundaryLaplacian => "boundary_laplacian".into(),
            SpectralProblem::XiBound => "xi_bound".into(),
        }
    }
}

/// Ascending eigenvalues of a boundary problem with boundary-trace
/// eigenvectors in loop order, orthonormal in the boundary `L^2` product.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralResult {
    pub problem: SpectralProblem,
    pub eigenvalues: Vec<f64>,
    #[serde(skip)]
    pub eigenvectors: Vec<Vec<f64>>,
    pub mesh_h: f64,
    /// Index clusters into `eigenvalues`.
    pub multiplicity_groups: Vec<Vec<usize>>,
    /// Largest eigenvalue of the full discrete spectrum.
    pub spectral_radius: f64,
}

/// First cluster of eigenvalues above the zero modes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FirstNonzero {
    pub value: f64,
    pub multiplicity: usize,
    pub index: usize,
}

impl SpectralResult {
    fn from_pairs(problem: SpectralProblem, pairs: Eigenpairs, count: usize, mesh_h: f64) -> Self {
        let spectral_radius = pairs.values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let floor = ZERO_MODE_FRACTION * spectral_radius;
        let mut groups = multiplicity_groups(&pairs.values, MULTIPLICITY_GAP, floor);
        groups.retain_mut(|g| {
            g.retain(|&i| i < count);
            !g.is_empty()
        });
        let eigenvectors = (0..count).map(|k| pairs.vectors.column(k).iter().copied().collect()).collect();
        SpectralResult {
            problem,
            eigenvalues: pairs.values[..count].to_vec(),
            eigenvectors,
            mesh_h,
            multiplicity_groups: groups,
            spectral_radius,
        }
    }

    /// Regroups the eigenvalues with a different relative gap.
    pub fn regroup(&mut self, rel_gap: f64) {
        self.multiplicity_groups =
            multiplicity_groups(&self.eigenvalues, rel_gap, ZERO_MODE_FRACTION * self.spectral_radius);
    }

    pub fn first_nonzero(&self) -> Option<FirstNonzero> {
        let threshold = ZERO_MODE_FRACTION * self.spectral_radius;
        self.multiplicity_groups.iter().find(|g| self.eigenvalues[g[0]] > threshold).map(|g| FirstNonzero {
            value: self.eigenvalues[g[0]],
            multiplicity: g.len(),
            index: g[0],
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spectral result serializes")
    }
}

/// Discrete Dirichlet-to-Neumann map `S = K_bb - K_bi K_ii^-1 K_ib`, rows and
/// columns in boundary-loop order.
pub fn dtn_reduce(k: &SparseSymMatrix, partition: &DofPartition) -> Result<DMatrix<f64>, EigenError> {
    let solver = InteriorSolver::new(k, partition.clone())?;
    Ok(schur_complement(k, &solver))
}

fn schur_complement(k: &SparseSymMatrix, solver: &InteriorSolver) -> DMatrix<f64> {
    let p = &solver.partition;
    let nb = p.boundary.len();
    let mut interior_pos = vec![usize::MAX; k.dim()];
    for (r, &i) in p.interior.iter().enumerate() {
        interior_pos[i] = r;
    }
    let columns: Vec<Vec<f64>> = p
        .boundary
        .par_iter()
        .map(|&bj| {
            let mut rhs = vec![0.0; p.interior.len()];
            for (i, v) in k.row(bj) {
                if interior_pos[i] != usize::MAX {
                    rhs[interior_pos[i]] = -v;
                }
            }
            let x = if p.interior.is_empty() { rhs } else { solver.solve_interior(&rhs) };
            p.boundary
                .iter()
                .map(|&br| {
                    k.row(br)
                        .map(|(j, v)| if interior_pos[j] != usize::MAX { v * x[interior_pos[j]] } else { 0.0 })
                        .sum::<f64>()
                        + k.get(br, bj)
                })
                .collect()
        })
        .collect();
    let s = DMatrix::from_fn(nb, nb, |r, c| columns[c][r]);
    (&s + s.transpose()) * 0.5
}

/// Boundary-reduced matrices of one mesh, shared by all boundary problems.
#[derive(Debug, Clone)]
pub struct BoundaryOperators {
    pub partition: DofPartition,
    /// Discrete Dirichlet-to-Neumann map.
    pub dtn: DMatrix<f64>,
    /// Tangential stiffness on boundary vertices.
    pub tangential: DMatrix<f64>,
    /// Boundary mass on boundary vertices.
    pub mass: DMatrix<f64>,
    pub mesh_h: f64,
}

impl BoundaryOperators {
    pub fn new(mesh: &TriangleMesh) -> Result<Self, EigenError> {
        let k = assemble_domain_stiffness(mesh)?;
        let partition = DofPartition::from_mesh(mesh);
        let dtn = dtn_reduce(&k, &partition)?;
        let (tangential, mass) = boundary_blocks(mesh, &partition)?;
        Ok(BoundaryOperators { partition, dtn, tangential, mass, mesh_h: mesh.h })
    }

    pub fn boundary_dofs(&self) -> usize {
        self.partition.boundary.len()
    }

    pub fn steklov(&self, count: usize) -> Result<SpectralResult, EigenError> {
        let count = clamp_count(count, self.boundary_dofs())?;
        let pairs = solve_generalized_symmetric(&self.dtn, &self.mass)?;
        Ok(SpectralResult::from_pairs(SpectralProblem::Steklov, pairs, count, self.mesh_h))
    }

    pub fn wentzell(&self, beta: f64, count: usize) -> Result<SpectralResult, EigenError> {
        check_beta(beta)?;
        let count = clamp_count(count, self.boundary_dofs())?;
        let a = &self.dtn + &self.tangential * beta;
        let pairs = solve_generalized_symmetric(&a, &self.mass)?;
        Ok(SpectralResult::from_pairs(SpectralProblem::Wentzell { beta }, pairs, count, self.mesh_h))
    }

    pub fn boundary_laplacian(&self, count: usize) -> Result<SpectralResult, EigenError> {
        let count = clamp_count(count, self.boundary_dofs())?;
        let pairs = solve_generalized_symmetric(&self.tangential, &self.mass)?;
        Ok(SpectralResult::from_pairs(SpectralProblem::BoundaryLaplacian, pairs, count, self.mesh_h))
    }
}

fn boundary_blocks(mesh: &TriangleMesh, partition: &DofPartition) -> Result<(DMatrix<f64>, DMatrix<f64>), EigenError> {
    let kb = assemble_boundary_stiffness(mesh)?;
    let mb = assemble_boundary_mass(mesh)?;
    let b = &partition.boundary;
    Ok((kb.dense_block(b, b), mb.dense_block(b, b)))
}

fn check_beta(beta: f64) -> Result<(), EigenError> {
    if beta.is_finite() && beta >= 0.0 {
        Ok(())
    } else {
        Err(EigenError::InvalidParameter(format!("beta must be a nonnegative number, got {beta}")))
    }
}

fn clamp_count(count: usize, available: usize) -> Result<usize, EigenError> {
    if count == 0 {
        return Err(EigenError::InvalidParameter("eigenvalue count must be positive".into()));
    }
    if count > available {
        log::warn!("requested {count} eigenvalues but only {available} boundary degrees of freedom exist; clamping");
        return Ok(available);
    }
    Ok(count)
}

/// Steklov eigenvalues `p_0 <= p_1 <= ...` of the mesh.
pub fn steklov_spectrum(mesh: &TriangleMesh, count: usize) -> Result<SpectralResult, EigenError> {
    BoundaryOperators::new(mesh)?.steklov(count)
}

/// Wentzell eigenvalues for a nonnegative boundary diffusion coefficient.
pub fn wentzell_spectrum(mesh: &TriangleMesh, beta: f64, count: usize) -> Result<SpectralResult, EigenError> {
    check_beta(beta)?;
    BoundaryOperators::new(mesh)?.wentzell(beta, count)
}

/// Full spectrum of the Laplacian of the boundary curve.
pub fn boundary_eta1(mesh: &TriangleMesh) -> Result<SpectralResult, EigenError> {
    let partition = DofPartition::from_mesh(mesh);
    let (kb, mb) = boundary_blocks(mesh, &partition)?;
    let pairs = solve_generalized_symmetric(&kb, &mb)?;
    let n = pairs.values.len();
    Ok(SpectralResult::from_pairs(SpectralProblem::BoundaryLaplacian, pairs, n, mesh.h))
}

/// First nonzero eigenvalue of a closed curve of length `length`,
/// `(2 pi / L)^2`.
pub fn closed_form_eta1(length: f64) -> f64 {
    (2.0 * PI / length).powi(2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fem::harmonic_extension;
    use crate::geometry::{generate_mesh, DomainSpec};
    use approx::assert_relative_eq;

    #[test]
    fn constant_trace_is_in_the_kernel() {
        let mesh = generate_mesh(&DomainSpec::ellipse(2.0, 1.0), 0.2).unwrap();
        let ops = BoundaryOperators::new(&mesh).unwrap();
        let ones = nalgebra::DVector::from_element(ops.boundary_dofs(), 1.0);
        assert!((&ops.dtn * ones).amax() < 1e-12);
    }

    #[test]
    fn dtn_matches_explicit_extension() {
        let mesh = generate_mesh(&DomainSpec::disk(1.0), 0.05).unwrap();
        let ops = BoundaryOperators::new(&mesh).unwrap();
        let z: Vec<f64> = mesh.boundary_loop.iter().map(|&b| mesh.vertices[b][0]).collect();
        let zv = nalgebra::DVector::from_vec(z.clone());
        let via_schur = zv.dot(&(&ops.dtn * &zv));
        let f = harmonic_extension(&mesh, &z).unwrap();
        let k = assemble_domain_stiffness(&mesh).unwrap();
        let direct = k.quad_form(&f);
        assert!((via_schur - direct).abs() < 1e-12 * direct);
        assert_relative_eq!(via_schur, PI, max_relative = 2e-3);
    }

    #[test]
    fn disk_spectra() {
        let mesh = generate_mesh(&DomainSpec::disk(1.0), 0.05).unwrap();
        let ops = BoundaryOperators::new(&mesh).unwrap();
        let st = ops.steklov(7).unwrap();
        assert!(st.eigenvalues[0].abs() < 1e-10);
        let c0 = &st.eigenvectors[0];
        assert!(c0.iter().all(|v| (v - c0[0]).abs() < 1e-8));
        for k in 1..=3 {
            for idx in [2 * k - 1, 2 * k] {
                assert_relative_eq!(st.eigenvalues[idx], k as f64, max_relative = 1e-2);
            }
        }
        let first = st.first_nonzero().unwrap();
        assert_eq!((first.index, first.multiplicity), (1, 2));

        let w0 = ops.wentzell(0.0, 7).unwrap();
        for (a, b) in w0.eigenvalues.iter().zip(&st.eigenvalues) {
            assert!((a - b).abs() <= 1e-10 * b.abs().max(1.0));
        }
        let w = ops.wentzell(0.5, 6).unwrap();
        let f = w.first_nonzero().unwrap();
        assert_eq!(f.multiplicity, 2);
        assert_relative_eq!(f.value, 1.5, max_relative = 1e-2);
        let w10 = ops.wentzell(10.0, 6).unwrap();
        assert_relative_eq!(w10.eigenvalues[3], 42.0, max_relative = 1e-2);

        // B-orthonormal eigenvectors
        for i in 0..3 {
            for j in 0..3 {
                let (u, v) = (
                    nalgebra::DVector::from_vec(w.eigenvectors[i].clone()),
                    nalgebra::DVector::from_vec(w.eigenvectors[j].clone()),
                );
                let g = u.dot(&(&ops.mass * &v));
                assert!((g - if i == j { 1.0 } else { 0.0 }).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn radius_two_disk() {
        let mesh = generate_mesh(&DomainSpec::disk(2.0), 0.1).unwrap();
        let st = steklov_spectrum(&mesh, 3).unwrap();
        assert_relative_eq!(st.first_nonzero().unwrap().value, 0.5, max_relative = 1e-2);
    }

    #[test]
    fn negative_beta_rejected_and_count_clamped() {
        let mesh = generate_mesh(&DomainSpec::disk(1.0), 0.3).unwrap();
        assert!(matches!(wentzell_spectrum(&mesh, -0.1, 3), Err(EigenError::InvalidParameter(_))));
        let nb = mesh.boundary_loop.len();
        let st = steklov_spectrum(&mesh, nb + 10).unwrap();
        assert_eq!(st.eigenvalues.len(), nb);
    }

    #[test]
    fn eta1_on_circle_and_ellipse() {
        let mesh = generate_mesh(&DomainSpec::disk(1.0), 0.05).unwrap();
        let eta = boundary_eta1(&mesh).unwrap().first_nonzero().unwrap();
        assert_relative_eq!(eta.value, 1.0, max_relative = 5e-3);
        assert_eq!(closed_form_eta1(2.0 * PI), 1.0);
        let spec = DomainSpec::ellipse(2.0, 1.0);
        let l = spec.curve_length();
        assert_relative_eq!(l, 9.688448220547675, max_relative = 1e-9);
        assert_relative_eq!(closed_form_eta1(l), 0.4206, max_relative = 1e-3);
        let mesh = generate_mesh(&spec, 0.05).unwrap();
        let eta = boundary_eta1(&mesh).unwrap().first_nonzero().unwrap();
        assert_relative_eq!(eta.value, closed_form_eta1(l), max_relative = 5e-3);
    }

    #[test]
    fn json_has_no_vectors() {
        let mesh = generate_mesh(&DomainSpec::disk(1.0), 0.3).unwrap();
        let st = wentzell_spectrum(&mesh, 1.0, 3).unwrap();
        let json = st.to_json();
        assert!(json.contains("\"kind\": \"wentzell\""));
        assert!(!json.contains("eigenvectors"));
        let back: SpectralResult = serde_json::from_str(&json).unwrap();
        assert_eq!(back.eigenvalues, st.eigenvalues);
    }
}

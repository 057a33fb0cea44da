use crate::geometry::TriangleMesh;

use super::{
    assemble_boundary_mass, assemble_domain_mass, assemble_domain_stiffness, DofPartition, EnvelopeCholesky,
    FemError, SparseSymMatrix,
};

/// Factorization of the interior block `K_ii`, reused across right-hand sides.
#[derive(Debug, Clone)]
pub struct InteriorSolver {
    pub partition: DofPartition,
    chol: EnvelopeCholesky,
}

impl InteriorSolver {
    pub fn new(k: &SparseSymMatrix, partition: DofPartition) -> Result<Self, FemError> {
        let chol = EnvelopeCholesky::factor(k, &partition.interior)?;
        Ok(InteriorSolver { partition, chol })
    }

    /// Solves `K_ii x = rhs` with `rhs` ordered like the interior indices.
    pub fn solve_interior(&self, rhs: &[f64]) -> Vec<f64> {
        self.chol.solve(rhs)
    }

    /// Nodal values of the discrete harmonic function with trace `z`
    /// (ordered like the boundary loop).
    pub fn extend(&self, k: &SparseSymMatrix, z: &[f64]) -> Vec<f64> {
        let p = &self.partition;
        assert_eq!(z.len(), p.boundary.len(), "one boundary value per loop vertex");
        let mut f = vec![0.0; p.len()];
        for (&b, &v) in p.boundary.iter().zip(z) {
            f[b] = v;
        }
        if p.interior.is_empty() {
            return f;
        }
        // K_ii f_i = -K_ib z
        let rhs: Vec<f64> = p
            .interior
            .iter()
            .map(|&i| -k.row(i).map(|(j, v)| v * f[j]).sum::<f64>())
            .collect();
        for (&i, v) in p.interior.iter().zip(self.solve_interior(&rhs)) {
            f[i] = v;
        }
        f
    }
}

/// Discrete harmonic extension of boundary values given in loop order.
pub fn harmonic_extension(mesh: &TriangleMesh, boundary_values: &[f64]) -> Result<Vec<f64>, FemError> {
    if boundary_values.len() != mesh.boundary_loop.len() {
        return Err(FemError::DimensionMismatch { expected: mesh.boundary_loop.len(), got: boundary_values.len() });
    }
    let k = assemble_domain_stiffness(mesh)?;
    let solver = InteriorSolver::new(&k, DofPartition::from_mesh(mesh))?;
    Ok(solver.extend(&k, boundary_values))
}

/// Solution of the Neumann problem `Lap g = rhs - mean`, zero normal
/// derivative, normalized to zero boundary mean.
#[derive(Debug, Clone, PartialEq)]
pub struct NeumannSolution {
    pub values: Vec<f64>,
    /// Domain mean of the right-hand side that was subtracted.
    pub mean_correction: f64,
}

/// Reusable pieces for repeated Neumann solves on one mesh.
#[derive(Debug, Clone)]
pub struct NeumannSolver {
    stiffness: SparseSymMatrix,
    mass: SparseSymMatrix,
    boundary_mass: SparseSymMatrix,
    /// Every vertex but the pinned one.
    free: Vec<usize>,
    chol: EnvelopeCholesky,
}

impl NeumannSolver {
    pub fn new(mesh: &TriangleMesh) -> Result<Self, FemError> {
        let stiffness = assemble_domain_stiffness(mesh)?;
        let mass = assemble_domain_mass(mesh)?;
        let boundary_mass = assemble_boundary_mass(mesh)?;
        // pinning one vertex removes the constant kernel
        let free: Vec<usize> = (1..mesh.num_vertices()).collect();
        let chol = EnvelopeCholesky::factor(&stiffness, &free)?;
        Ok(NeumannSolver { stiffness, mass, boundary_mass, free, chol })
    }

    pub fn stiffness(&self) -> &SparseSymMatrix {
        &self.stiffness
    }

    pub fn mass(&self) -> &SparseSymMatrix {
        &self.mass
    }

    pub fn boundary_mass(&self) -> &SparseSymMatrix {
        &self.boundary_mass
    }

    pub fn solve(&self, rhs: &[f64]) -> Result<NeumannSolution, FemError> {
        let n = self.stiffness.dim();
        if rhs.len() != n {
            return Err(FemError::DimensionMismatch { expected: n, got: rhs.len() });
        }
        let ones = vec![1.0; n];
        let mean = self.mass.bilinear(&ones, rhs) / self.mass.quad_form(&ones);
        let centred: Vec<f64> = rhs.iter().map(|r| r - mean).collect();
        let load: Vec<f64> = self.mass.matvec(&centred).into_iter().map(|v| -v).collect();
        let reduced: Vec<f64> = self.free.iter().map(|&i| load[i]).collect();
        let mut g = vec![0.0; n];
        for (&i, v) in self.free.iter().zip(self.chol.solve(&reduced)) {
            g[i] = v;
        }
        let shift = self.boundary_mass.bilinear(&ones, &g) / self.boundary_mass.quad_form(&ones);
        for v in &mut g {
            *v -= shift;
        }
        Ok(NeumannSolution { values: g, mean_correction: mean })
    }
}

pub fn neumann_poisson_solve(mesh: &TriangleMesh, rhs_nodal: &[f64]) -> Result<NeumannSolution, FemError> {
    NeumannSolver::new(mesh)?.solve(rhs_nodal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{generate_mesh, DomainSpec};
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn disk() -> TriangleMesh {
        generate_mesh(&DomainSpec::disk(1.0), 0.05).unwrap()
    }

    #[test]
    fn constants_extend_to_constants() {
        let mesh = generate_mesh(&DomainSpec::ellipse(2.0, 1.0), 0.2).unwrap();
        let f = harmonic_extension(&mesh, &vec![1.0; mesh.boundary_loop.len()]).unwrap();
        assert!(f.iter().all(|v| (v - 1.0).abs() < 1e-12));
    }

    #[test]
    fn cosine_extends_to_x() {
        let mesh = disk();
        let z: Vec<f64> = mesh.boundary_loop.iter().map(|&b| mesh.vertices[b][0]).collect();
        let f = harmonic_extension(&mesh, &z).unwrap();
        let k = assemble_domain_stiffness(&mesh).unwrap();
        assert_relative_eq!(k.quad_form(&f), PI, max_relative = 2e-3);
        let err = f.iter().zip(&mesh.vertices).map(|(v, p)| (v - p[0]).abs()).fold(0.0, f64::max);
        assert!(err < 1e-2, "max deviation from x: {err}");
        let (lo, hi) = z.iter().fold((f64::MAX, f64::MIN), |(a, b), v| (a.min(*v), b.max(*v)));
        assert!(f.iter().all(|v| *v >= lo - 1e-12 && *v <= hi + 1e-12));
        // interior equations hold
        let part = DofPartition::from_mesh(&mesh);
        let kf = k.matvec(&f);
        assert!(part.interior.iter().all(|&i| kf[i].abs() < 1e-10));
    }

    #[test]
    fn zero_rhs_gives_zero() {
        let mesh = generate_mesh(&DomainSpec::disk(1.0), 0.2).unwrap();
        let sol = neumann_poisson_solve(&mesh, &vec![0.0; mesh.num_vertices()]).unwrap();
        assert!(sol.values.iter().all(|v| *v == 0.0));
        assert_eq!(sol.mean_correction, 0.0);
    }

    #[test]
    fn disk_poisson_matches_radial_solution() {
        let mesh = disk();
        let solver = NeumannSolver::new(&mesh).unwrap();
        let x: Vec<f64> = mesh.vertices.iter().map(|p| p[0]).collect();
        let sol = solver.solve(&x).unwrap();
        assert!(sol.mean_correction.abs() < 1e-12);
        // g = (r^3/8 - 3r/8) cos(theta); trace -cos(theta)/4
        for &b in &mesh.boundary_loop {
            let p = mesh.vertices[b];
            assert!((sol.values[b] + p[0] / 4.0).abs() < 2e-3);
        }
        let g2 = solver.boundary_mass().quad_form(&sol.values);
        assert_relative_eq!(g2, PI / 16.0, max_relative = 1e-2);
        let ones = vec![1.0; mesh.num_vertices()];
        assert!(solver.boundary_mass().bilinear(&ones, &sol.values).abs() < 1e-12);

        // weak equations K g = -M (x - mean) hold everywhere
        let kg = solver.stiffness().matvec(&sol.values);
        let mx = solver.mass().matvec(&x);
        let res = kg.iter().zip(&mx).map(|(a, b)| (a + b).abs()).fold(0.0, f64::max);
        assert!(res < 1e-10, "residual {res}");
    }

    #[test]
    fn mean_correction_reports_offset() {
        let mesh = generate_mesh(&DomainSpec::disk(1.0), 0.1).unwrap();
        let shifted: Vec<f64> = mesh.vertices.iter().map(|p| p[0] + 0.25).collect();
        let plain: Vec<f64> = mesh.vertices.iter().map(|p| p[0]).collect();
        let a = neumann_poisson_solve(&mesh, &shifted).unwrap();
        let b = neumann_poisson_solve(&mesh, &plain).unwrap();
        assert_relative_eq!(a.mean_correction, 0.25, epsilon = 1e-12);
        for (u, v) in a.values.iter().zip(&b.values) {
            assert!((u - v).abs() < 1e-10);
        }
    }
}

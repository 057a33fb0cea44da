use crate::geometry::TriangleMesh;

use super::{FemError, SparseSymMatrix};

/// Triangles whose area is below this fraction of `h^2` are rejected.
const DEGENERATE_AREA: f64 = 1e-14;

/// Interior and boundary vertex indices; the boundary follows the loop.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DofPartition {
    pub interior: Vec<usize>,
    pub boundary: Vec<usize>,
}

impl DofPartition {
    pub fn from_mesh(mesh: &TriangleMesh) -> Self {
        let mut on_boundary = vec![false; mesh.num_vertices()];
        for &b in &mesh.boundary_loop {
            on_boundary[b] = true;
        }
        let interior = (0..mesh.num_vertices()).filter(|&v| !on_boundary[v]).collect();
        DofPartition { interior, boundary: mesh.boundary_loop.clone() }
    }

    pub fn len(&self) -> usize {
        self.interior.len() + self.boundary.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Returns `(area, [b_i], [c_i])` with `grad phi_i = (b_i, c_i) / (2 area)`.
fn triangle_geometry(mesh: &TriangleMesh, t: usize) -> Result<(f64, [f64; 3], [f64; 3]), FemError> {
    let tri = mesh.triangles[t];
    let p = tri.map(|v| mesh.vertices[v]);
    let area = mesh.signed_area(t);
    let scale = mesh.h.max(f64::MIN_POSITIVE);
    if !(area > DEGENERATE_AREA * scale * scale) {
        return Err(FemError::DegenerateTriangle { index: t, area });
    }
    let mut b = [0.0; 3];
    let mut c = [0.0; 3];
    for i in 0..3 {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        b[i] = p[j][1] - p[k][1];
        c[i] = p[k][0] - p[j][0];
    }
    Ok((area, b, c))
}

/// `u^T K v = integral of grad u . grad v` for P1 functions.
pub fn assemble_domain_stiffness(mesh: &TriangleMesh) -> Result<SparseSymMatrix, FemError> {
    let mut triplets = Vec::with_capacity(9 * mesh.num_triangles());
    for t in 0..mesh.num_triangles() {
        let (area, b, c) = triangle_geometry(mesh, t)?;
        let tri = mesh.triangles[t];
        for i in 0..3 {
            for j in 0..3 {
                triplets.push((tri[i], tri[j], (b[i] * b[j] + c[i] * c[j]) / (4.0 * area)));
            }
        }
    }
    Ok(SparseSymMatrix::from_triplets(mesh.num_vertices(), triplets))
}

/// Consistent P1 mass matrix over the domain.
pub fn assemble_domain_mass(mesh: &TriangleMesh) -> Result<SparseSymMatrix, FemError> {
    let mut triplets = Vec::with_capacity(9 * mesh.num_triangles());
    for t in 0..mesh.num_triangles() {
        let (area, _, _) = triangle_geometry(mesh, t)?;
        let tri = mesh.triangles[t];
        for i in 0..3 {
            for j in 0..3 {
                let w = if i == j { area / 6.0 } else { area / 12.0 };
                triplets.push((tri[i], tri[j], w));
            }
        }
    }
    Ok(SparseSymMatrix::from_triplets(mesh.num_vertices(), triplets))
}

/// Boundary edges as vertex pairs with their lengths, after checking that
/// the loop closes along mesh boundary edges.
fn boundary_segments(mesh: &TriangleMesh) -> Result<Vec<(usize, usize, f64)>, FemError> {
    let n = mesh.boundary_loop.len();
    if n < 3 {
        return Err(FemError::OpenBoundary(format!("boundary loop has {n} vertices")));
    }
    let counts = mesh.edge_counts();
    let mut seen = vec![false; mesh.num_vertices()];
    let mut out = Vec::with_capacity(n);
    for (a, b) in mesh.boundary_edges() {
        if a >= mesh.num_vertices() || b >= mesh.num_vertices() {
            return Err(FemError::OpenBoundary(format!("loop references missing vertex {}", a.max(b))));
        }
        if std::mem::replace(&mut seen[a], true) {
            return Err(FemError::OpenBoundary(format!("vertex {a} visited twice")));
        }
        if counts.get(&(a.min(b), a.max(b))) != Some(&1) {
            return Err(FemError::OpenBoundary(format!("loop step {a} -> {b} is not a boundary edge")));
        }
        let (p, q) = (mesh.vertices[a], mesh.vertices[b]);
        let len = ((p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2)).sqrt();
        if !(len > 0.0) {
            return Err(FemError::OpenBoundary(format!("zero-length boundary edge {a} -> {b}")));
        }
        out.push((a, b, len));
    }
    Ok(out)
}

/// `u^T M_b v = integral over the boundary of u v` (consistent 1D mass).
pub fn assemble_boundary_mass(mesh: &TriangleMesh) -> Result<SparseSymMatrix, FemError> {
    let mut triplets = Vec::new();
    for (a, b, len) in boundary_segments(mesh)? {
        triplets.extend([(a, a, len / 3.0), (b, b, len / 3.0), (a, b, len / 6.0), (b, a, len / 6.0)]);
    }
    Ok(SparseSymMatrix::from_triplets(mesh.num_vertices(), triplets))
}

/// Tangential (Laplace-Beltrami) stiffness along the boundary loop.
pub fn assemble_boundary_stiffness(mesh: &TriangleMesh) -> Result<SparseSymMatrix, FemError> {
    let mut triplets = Vec::new();
    for (a, b, len) in boundary_segments(mesh)? {
        let w = 1.0 / len;
        triplets.extend([(a, a, w), (b, b, w), (a, b, -w), (b, a, -w)]);
    }
    Ok(SparseSymMatrix::from_triplets(mesh.num_vertices(), triplets))
}

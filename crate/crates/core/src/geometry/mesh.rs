use std::collections::HashMap;
use std::fmt::Write as _;

use super::domain::{dist, orient, Point};
use super::GeometryError;

/// Straight-edged triangulation of a planar domain.
///
/// Triangles are counterclockwise. `boundary_loop` lists the boundary
/// vertices in counterclockwise traversal order; consecutive entries (and
/// the last/first pair) are the boundary edges.
#[derive(Debug, Clone, PartialEq)]
pub struct TriangleMesh {
    pub vertices: Vec<Point>,
    pub triangles: Vec<[usize; 3]>,
    pub boundary_loop: Vec<usize>,
    /// Maximum edge length.
    pub h: f64,
}

impl TriangleMesh {
    /// Builds a mesh and recomputes `h`. Structural invariants are checked.
    pub fn new(
        vertices: Vec<Point>,
        triangles: Vec<[usize; 3]>,
        boundary_loop: Vec<usize>,
    ) -> Result<Self, GeometryError> {
        let mut mesh = TriangleMesh { vertices, triangles, boundary_loop, h: 0.0 };
        mesh.h = mesh.max_edge_length();
        mesh.check()?;
        Ok(mesh)
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_triangles(&self) -> usize {
        self.triangles.len()
    }

    pub fn signed_area(&self, t: usize) -> f64 {
        let [a, b, c] = self.triangles[t];
        0.5 * orient(self.vertices[a], self.vertices[b], self.vertices[c])
    }

    pub fn boundary_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.boundary_loop.len();
        (0..n).map(move |i| (self.boundary_loop[i], self.boundary_loop[(i + 1) % n]))
    }

    /// Undirected edges with the number of incident triangles.
    pub fn edge_counts(&self) -> HashMap<(usize, usize), usize> {
        let mut counts = HashMap::new();
        for tri in &self.triangles {
            for k in 0..3 {
                let (a, b) = (tri[k], tri[(k + 1) % 3]);
                *counts.entry((a.min(b), a.max(b))).or_insert(0) += 1;
            }
        }
        counts
    }

    pub fn max_edge_length(&self) -> f64 {
        let mut h: f64 = 0.0;
        for tri in &self.triangles {
            for k in 0..3 {
                h = h.max(dist(self.vertices[tri[k]], self.vertices[tri[(k + 1) % 3]]));
            }
        }
        h
    }

    /// Smallest interior angle over all triangles, in degrees.
    pub fn min_angle_degrees(&self) -> f64 {
        self.triangles
            .iter()
            .map(|tri| triangle_min_angle(self.tri_points(tri)))
            .fold(f64::INFINITY, f64::min)
            .to_degrees()
    }

    pub(crate) fn tri_points(&self, tri: &[usize; 3]) -> [Point; 3] {
        [self.vertices[tri[0]], self.vertices[tri[1]], self.vertices[tri[2]]]
    }

    /// Checks orientation, index ranges and the boundary-loop/edge
    /// correspondence.
    pub fn check(&self) -> Result<(), GeometryError> {
        let nv = self.vertices.len();
        let bad = |msg: String| Err(GeometryError::InvalidMesh(msg));
        if self.triangles.is_empty() {
            return bad("mesh has no triangles".into());
        }
        for (t, tri) in self.triangles.iter().enumerate() {
            if let Some(&v) = tri.iter().find(|&&v| v >= nv) {
                return bad(format!("triangle {t} references missing vertex {v}"));
            }
            if self.signed_area(t) <= 0.0 {
                return bad(format!("triangle {t} has nonpositive signed area {}", self.signed_area(t)));
            }
        }
        if self.boundary_loop.len() < 3 {
            return bad("boundary loop has fewer than 3 vertices".into());
        }
        if let Some(&v) = self.boundary_loop.iter().find(|&&v| v >= nv) {
            return bad(format!("boundary loop references missing vertex {v}"));
        }
        let counts = self.edge_counts();
        let mut loop_edges = HashMap::new();
        for (a, b) in self.boundary_edges() {
            let key = (a.min(b), a.max(b));
            if loop_edges.insert(key, ()).is_some() {
                return bad(format!("boundary edge ({a},{b}) repeated in loop"));
            }
            if counts.get(&key) != Some(&1) {
                return bad(format!("boundary loop edge ({a},{b}) is not a boundary edge of the mesh"));
            }
        }
        for (key, &count) in &counts {
            if count > 2 {
                return bad(format!("edge {key:?} shared by {count} triangles"));
            }
            if count == 1 && !loop_edges.contains_key(key) {
                return bad(format!("mesh boundary edge {key:?} missing from boundary loop"));
            }
        }
        Ok(())
    }

    /// Translates every vertex by `shift`.
    pub fn translated(&self, shift: Point) -> TriangleMesh {
        let mut out = self.clone();
        for v in &mut out.vertices {
            v[0] += shift[0];
            v[1] += shift[1];
        }
        out
    }

    /// Serializes in the line-oriented text format:
    /// `nv nt nb`, then `x y` per vertex, `i j k` per triangle and one
    /// boundary-loop index per line.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} {} {}", self.vertices.len(), self.triangles.len(), self.boundary_loop.len());
        for v in &self.vertices {
            // `{:?}` prints the shortest representation that round-trips
            let _ = writeln!(s, "{:?} {:?}", v[0], v[1]);
        }
        for t in &self.triangles {
            let _ = writeln!(s, "{} {} {}", t[0], t[1], t[2]);
        }
        for b in &self.boundary_loop {
            let _ = writeln!(s, "{b}");
        }
        s
    }

    /// Parses the text format written by [`TriangleMesh::to_text`].
    pub fn from_text(text: &str) -> Result<TriangleMesh, GeometryError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let err = |line: usize, message: String| GeometryError::Parse { line, message };

        let (hline, header) = lines.next().ok_or_else(|| err(1, "no header".into()))?;
        let counts: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|e| err(hline, format!("bad header '{header}': {e}")))?;
        let [nv, nt, nb] = counts[..] else {
            return Err(err(hline, format!("header needs 3 counts, got '{header}'")));
        };

        let mut vertices = Vec::with_capacity(nv);
        for _ in 0..nv {
            let (ln, l) = lines.next().ok_or_else(|| err(hline, "unexpected end of file in vertices".into()))?;
            let xy: Vec<f64> = l
                .split_whitespace()
                .map(|t| t.parse::<f64>())
                .collect::<Result<_, _>>()
                .map_err(|e| err(ln, format!("bad vertex '{l}': {e}")))?;
            let [x, y] = xy[..] else {
                return Err(err(ln, format!("vertex needs 2 coordinates, got '{l}'")));
            };
            vertices.push([x, y]);
        }
        let mut triangles = Vec::with_capacity(nt);
        for _ in 0..nt {
            let (ln, l) = lines.next().ok_or_else(|| err(hline, "unexpected end of file in triangles".into()))?;
            let idx: Vec<usize> = l
                .split_whitespace()
                .map(|t| t.parse::<usize>())
                .collect::<Result<_, _>>()
                .map_err(|e| err(ln, format!("bad triangle '{l}': {e}")))?;
            let [i, j, k] = idx[..] else {
                return Err(err(ln, format!("triangle needs 3 indices, got '{l}'")));
            };
            if let Some(&v) = [i, j, k].iter().find(|&&v| v >= nv) {
                return Err(err(ln, format!("triangle references missing vertex {v}")));
            }
            triangles.push([i, j, k]);
        }
        let mut boundary_loop = Vec::with_capacity(nb);
        for _ in 0..nb {
            let (ln, l) = lines.next().ok_or_else(|| err(hline, "unexpected end of file in boundary loop".into()))?;
            let v: usize = l.parse().map_err(|e| err(ln, format!("bad boundary index '{l}': {e}")))?;
            if v >= nv {
                return Err(err(ln, format!("boundary loop references missing vertex {v}")));
            }
            boundary_loop.push(v);
        }
        if let Some((ln, l)) = lines.next() {
            return Err(err(ln, format!("trailing content '{l}'")));
        }
        TriangleMesh::new(vertices, triangles, boundary_loop)
    }
}

pub(crate) fn triangle_min_angle(p: [Point; 3]) -> f64 {
    let mut best = f64::INFINITY;
    for k in 0..3 {
        let a = p[k];
        let b = p[(k + 1) % 3];
        let c = p[(k + 2) % 3];
        let u = [b[0] - a[0], b[1] - a[1]];
        let v = [c[0] - a[0], c[1] - a[1]];
        let ang = (u[0] * v[1] - u[1] * v[0]).abs().atan2(u[0] * v[0] + u[1] * v[1]);
        best = best.min(ang);
    }
    best
}

pub fn save_mesh(mesh: &TriangleMesh) -> String {
    mesh.to_text()
}

pub fn load_mesh(text: &str) -> Result<TriangleMesh, GeometryError> {
    TriangleMesh::from_text(text)
}

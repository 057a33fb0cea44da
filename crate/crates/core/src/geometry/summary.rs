use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::domain::{dist, DomainSpec, Point};
use super::mesh::TriangleMesh;

/// Geometric quantities consumed by the eigenvalue bounds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeometricSummary {
    pub dimension: usize,
    /// Mesh area.
    pub area: f64,
    /// Mesh boundary length.
    pub perimeter: f64,
    /// Lower bound of the boundary curvature of the analytic curve; absent
    /// for polygons.
    pub min_curvature: Option<f64>,
    pub domain_centroid: Point,
    pub boundary_centroid: Point,
    /// Integral of the squared distance to `domain_centroid`.
    pub second_moment: f64,
    pub unit_ball_volume: f64,
    pub convex: bool,
    /// Arclength of the analytic boundary curve.
    pub curve_length: f64,
    /// Area enclosed by the analytic boundary curve.
    pub curve_area: f64,
}

/// Volume of the unit ball in `n` dimensions, `pi^(n/2) / Gamma(n/2 + 1)`.
pub fn unit_ball_volume(n: usize) -> f64 {
    // omega_n = 2 pi / n * omega_{n-2}
    let (mut w, start) = if n.is_multiple_of(2) { (1.0, 2) } else { (2.0, 3) };
    let mut k = start;
    while k <= n {
        w *= 2.0 * PI / k as f64;
        k += 2;
    }
    w
}

/// Area of the unit sphere `S^{n-1}`, `n * omega_n`.
pub fn unit_sphere_area(n: usize) -> f64 {
    n as f64 * unit_ball_volume(n)
}

pub fn geometric_summary(spec: &DomainSpec, mesh: &TriangleMesh, n: usize) -> GeometricSummary {
    let area = mesh_area(mesh);
    let perimeter = mesh.boundary_edges().map(|(a, b)| dist(mesh.vertices[a], mesh.vertices[b])).sum();
    let domain_centroid = domain_centroid(mesh);
    let second_moment = second_moment(mesh, domain_centroid);
    GeometricSummary {
        dimension: n,
        area,
        perimeter,
        min_curvature: spec.min_curvature(),
        domain_centroid,
        boundary_centroid: boundary_centroid(mesh),
        second_moment,
        unit_ball_volume: unit_ball_volume(n),
        convex: spec.is_convex(),
        curve_length: spec.curve_length(),
        curve_area: spec.curve_area(),
    }
}

pub fn mesh_area(mesh: &TriangleMesh) -> f64 {
    (0..mesh.num_triangles()).map(|t| mesh.signed_area(t)).sum()
}

/// `(1/|Omega|) * integral of x` over the mesh (exact for the polygonal domain).
pub fn domain_centroid(mesh: &TriangleMesh) -> Point {
    let (mut a, mut m) = (0.0, [0.0; 2]);
    for (t, tri) in mesh.triangles.iter().enumerate() {
        let area = mesh.signed_area(t);
        let p = mesh.tri_points(tri);
        a += area;
        for d in 0..2 {
            m[d] += area * (p[0][d] + p[1][d] + p[2][d]) / 3.0;
        }
    }
    [m[0] / a, m[1] / a]
}

/// `(1/|boundary|) * integral of x` over the boundary polyline.
pub fn boundary_centroid(mesh: &TriangleMesh) -> Point {
    let (mut l, mut m) = (0.0, [0.0; 2]);
    for (a, b) in mesh.boundary_edges() {
        let (p, q) = (mesh.vertices[a], mesh.vertices[b]);
        let len = dist(p, q);
        l += len;
        for d in 0..2 {
            m[d] += len * 0.5 * (p[d] + q[d]);
        }
    }
    [m[0] / l, m[1] / l]
}

/// Integral of `|x - origin|^2` by the edge-midpoint rule (exact for
/// quadratics).
pub fn second_moment(mesh: &TriangleMesh, origin: Point) -> f64 {
    let [a, b] = coordinate_second_moments(mesh, origin);
    a + b
}

/// Integrals of `(x_i - origin_i)^2` for each coordinate, exact for the
/// polygonal domain.
pub fn coordinate_second_moments(mesh: &TriangleMesh, origin: Point) -> [f64; 2] {
    let mut total = [0.0; 2];
    for (t, tri) in mesh.triangles.iter().enumerate() {
        let p = mesh.tri_points(tri);
        let area = mesh.signed_area(t);
        for (d, sum) in total.iter_mut().enumerate() {
            let s: f64 = (0..3)
                .map(|k| {
                    let m = 0.5 * (p[k][d] + p[(k + 1) % 3][d]) - origin[d];
                    m * m
                })
                .sum();
            *sum += area * s / 3.0;
        }
    }
    total
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OriginMode {
    /// Zero mean of the coordinates over the domain.
    DomainCentroid,
    /// Zero mean of the coordinates over the boundary.
    BoundaryCentroid,
}

/// Translates the mesh so the chosen coordinate integrals vanish.
pub fn normalize_origin(mesh: &TriangleMesh, mode: OriginMode) -> TriangleMesh {
    let centroid = |m: &TriangleMesh| match mode {
        OriginMode::DomainCentroid => domain_centroid(m),
        OriginMode::BoundaryCentroid => boundary_centroid(m),
    };
    let mut out = mesh.clone();
    // a second pass removes the rounding left by the first translation
    for _ in 0..2 {
        let c = centroid(&out);
        if c == [0.0, 0.0] {
            break;
        }
        out = out.translated([-c[0], -c[1]]);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{generate_mesh, refine};
    use approx::assert_relative_eq;

    #[test]
    fn unit_ball_volumes() {
        assert_relative_eq!(unit_ball_volume(1), 2.0);
        assert_relative_eq!(unit_ball_volume(2), PI);
        assert_relative_eq!(unit_ball_volume(3), 4.0 * PI / 3.0);
        assert_relative_eq!(unit_ball_volume(4), PI * PI / 2.0);
        assert_relative_eq!(unit_ball_volume(5), 8.0 * PI * PI / 15.0);
    }

    #[test]
    fn disk_radius_two() {
        let spec = DomainSpec::disk(2.0);
        let mesh = generate_mesh(&spec, 0.1).unwrap();
        let s = geometric_summary(&spec, &mesh, 2);
        assert_relative_eq!(s.area, 4.0 * PI, max_relative = 2e-3);
        assert_relative_eq!(s.perimeter, 4.0 * PI, max_relative = 1e-3);
        assert_eq!(s.min_curvature, Some(0.5));
        assert!(s.convex);
        assert!(s.perimeter * s.perimeter >= 4.0 * PI * s.area);
    }

    #[test]
    fn unit_disk_second_moment() {
        let spec = DomainSpec::disk(1.0);
        let mesh = generate_mesh(&spec, 0.05).unwrap();
        let s = geometric_summary(&spec, &mesh, 2);
        assert_relative_eq!(s.second_moment, PI / 2.0, max_relative = 3e-3);
    }

    #[test]
    fn area_error_drops_by_four() {
        let spec = DomainSpec::disk(1.0);
        let m0 = generate_mesh(&spec, 0.2).unwrap();
        let m1 = refine(&m0, &spec).unwrap();
        let m2 = refine(&m1, &spec).unwrap();
        let e: Vec<f64> = [&m0, &m1, &m2].iter().map(|m| PI - mesh_area(m)).collect();
        for w in e.windows(2) {
            let ratio = w[0] / w[1];
            assert!((ratio - 4.0).abs() < 0.1, "ratio {ratio}");
        }
    }

    #[test]
    fn isoperimetric_sanity_on_corpus() {
        for spec in [DomainSpec::ellipse(2.0, 1.0), DomainSpec::star(0.1, 3), DomainSpec::ellipse(1.2, 1.0)] {
            let mesh = generate_mesh(&spec, 0.1).unwrap();
            let s = geometric_summary(&spec, &mesh, 2);
            assert!(s.perimeter * s.perimeter > 4.0 * PI * s.area);
        }
    }

    #[test]
    fn normalize_moves_disk_back_to_origin() {
        let spec = DomainSpec::disk(1.0);
        let mesh = generate_mesh(&spec, 0.1).unwrap().translated([3.0, 5.0]);
        for mode in [OriginMode::DomainCentroid, OriginMode::BoundaryCentroid] {
            let m = normalize_origin(&mesh, mode);
            let c = match mode {
                OriginMode::DomainCentroid => domain_centroid(&m),
                OriginMode::BoundaryCentroid => boundary_centroid(&m),
            };
            assert!(c[0].abs() < 1e-12 && c[1].abs() < 1e-12, "{c:?}");
            let shift = dist(m.vertices[0], mesh.vertices[0]);
            assert!((shift - 34f64.sqrt()).abs() < 1e-12);
            let again = normalize_origin(&m, mode);
            let moved = m.vertices.iter().zip(&again.vertices).map(|(a, b)| dist(*a, *b)).fold(0.0, f64::max);
            assert!(moved < 1e-12);
        }
    }

    #[test]
    fn ellipse_shift_removed_in_boundary_mode() {
        let spec = DomainSpec::ellipse(2.0, 1.0);
        let mesh = generate_mesh(&spec, 0.2).unwrap();
        let m = normalize_origin(&mesh.translated([1.0, 0.0]), OriginMode::BoundaryCentroid);
        let base = boundary_centroid(&mesh);
        for (a, b) in m.vertices.iter().zip(&mesh.vertices) {
            assert!((a[0] - (b[0] - base[0])).abs() < 1e-12);
            assert!((a[1] - (b[1] - base[1])).abs() < 1e-12);
        }
    }
}

//! Triangle mesh generation and uniform refinement.
//!
//! The boundary is sampled at arclength spacing close to `h`, the interior
//! is seeded with an origin-centred hexagonal lattice, and the point set is
//! triangulated with a constrained Delaunay triangulation (the boundary
//! polyline is the constraint). A few sweeps of Laplacian smoothing follow,
//! then circumcentre insertion and boundary-edge splitting until every
//! angle is at least [`MIN_ANGLE_DEGREES`].
//!
//! On a disk the boundary count is a multiple of six and the lattice is
//! hexagonal, so the point set is invariant under rotation by 60 degrees.
//! This keeps rotationally degenerate eigenvalue pairs degenerate to
//! round-off.

use std::collections::HashMap;

use spade::{ConstrainedDelaunayTriangulation, Point2, Triangulation};

use super::domain::{dist, DomainSpec, Point};
use super::mesh::{triangle_min_angle, TriangleMesh};
use super::GeometryError;

pub const MIN_ANGLE_DEGREES: f64 = 20.0;

/// Longest edge allowed relative to the target size.
const MAX_EDGE_FACTOR: f64 = 1.45;
/// Lattice points closer than this (times h) to the boundary are dropped.
const LATTICE_CLEARANCE: f64 = 0.6;
const SMOOTHING_SWEEPS: usize = 8;
const QUALITY_PASSES: usize = 60;

struct PointSet {
    /// Boundary vertices in counterclockwise order with their curve parameter.
    boundary: Vec<(f64, Point)>,
    interior: Vec<Point>,
}

impl PointSet {
    fn boundary_polyline(&self) -> Vec<Point> {
        self.boundary.iter().map(|b| b.1).collect()
    }

    fn all_points(&self) -> Vec<Point> {
        self.boundary.iter().map(|b| b.1).chain(self.interior.iter().copied()).collect()
    }
}

/// Generates a quality triangulation of `spec` with edges close to `h_target`.
pub fn generate_mesh(spec: &DomainSpec, h_target: f64) -> Result<TriangleMesh, GeometryError> {
    spec.validate()?;
    let diameter = spec.diameter();
    if !(h_target > 0.0 && h_target < diameter) {
        return Err(GeometryError::InvalidMeshSize { h: h_target, diameter });
    }
    let h = h_target;

    let mut points = PointSet {
        boundary: spec.arclength_params(h).into_iter().map(|t| (t, spec.point(t))).collect(),
        interior: Vec::new(),
    };
    let poly = points.boundary_polyline();
    points.interior = hex_lattice(&poly, h)
        .into_iter()
        .filter(|&p| point_in_polygon(p, &poly) && distance_to_polyline(p, &poly) >= LATTICE_CLEARANCE * h)
        .collect();

    let mut triangles = triangulate(&points)?;
    for _ in 0..SMOOTHING_SWEEPS {
        smooth(&mut points, &triangles, h);
        triangles = triangulate(&points)?;
    }

    let min_angle = MIN_ANGLE_DEGREES.to_radians();
    for _ in 0..QUALITY_PASSES {
        let all = points.all_points();
        let bad: Vec<usize> = (0..triangles.len())
            .filter(|&t| {
                let p = tri_points(&all, &triangles[t]);
                triangle_min_angle(p) < min_angle + 1e-3 || max_edge(p) > MAX_EDGE_FACTOR * h
            })
            .collect();
        if bad.is_empty() {
            break;
        }
        improve(spec, &mut points, &triangles, &bad, h);
        triangles = triangulate(&points)?;
        smooth(&mut points, &triangles, h);
        triangles = triangulate(&points)?;
    }

    let nb = points.boundary.len();
    let mesh = TriangleMesh::new(points.all_points(), triangles, (0..nb).collect())?;
    let angle = mesh.min_angle_degrees();
    if angle < MIN_ANGLE_DEGREES || mesh.h > 1.5 * h_target {
        return Err(GeometryError::MeshQuality(format!(
            "could not reach the quality target for {}: min angle {angle:.2} deg, h {:.4} (target {h_target})",
            spec.label(),
            mesh.h
        )));
    }
    log::debug!(
        "meshed {}: {} vertices, {} triangles, {} boundary, h={:.4}, min angle {:.2}",
        spec.label(),
        mesh.num_vertices(),
        mesh.num_triangles(),
        nb,
        mesh.h,
        angle
    );
    Ok(mesh)
}

/// Uniform refinement: every triangle is split into four, boundary edge
/// midpoints are placed on the analytic curve at the parameter midpoint.
pub fn refine(mesh: &TriangleMesh, spec: &DomainSpec) -> Result<TriangleMesh, GeometryError> {
    spec.validate()?;
    mesh.check()?;
    let period = spec.period();
    let mut vertices = mesh.vertices.clone();
    let mut midpoint: HashMap<(usize, usize), usize> = HashMap::new();

    // boundary first so the loop interleaves old and new vertices
    let mut boundary_loop = Vec::with_capacity(2 * mesh.boundary_loop.len());
    for (a, b) in mesh.boundary_edges() {
        let ta = spec.param_of(mesh.vertices[a]);
        let tb = spec.param_of(mesh.vertices[b]);
        let span = (tb - ta).rem_euclid(period);
        if span > 0.5 * period {
            return Err(GeometryError::InvalidMesh(format!(
                "boundary edge ({a},{b}) runs clockwise along the curve; mesh was not generated from this spec"
            )));
        }
        let m = vertices.len();
        vertices.push(spec.point(ta + 0.5 * span));
        midpoint.insert((a.min(b), a.max(b)), m);
        boundary_loop.push(a);
        boundary_loop.push(m);
    }

    let mut triangles = Vec::with_capacity(4 * mesh.triangles.len());
    for tri in &mesh.triangles {
        let mut mid = [0usize; 3];
        for k in 0..3 {
            let (a, b) = (tri[k], tri[(k + 1) % 3]);
            let key = (a.min(b), a.max(b));
            mid[k] = *midpoint.entry(key).or_insert_with(|| {
                let (p, q) = (mesh.vertices[a], mesh.vertices[b]);
                vertices.push([0.5 * (p[0] + q[0]), 0.5 * (p[1] + q[1])]);
                vertices.len() - 1
            });
        }
        let [a, b, c] = *tri;
        let [ab, bc, ca] = mid;
        triangles.push([a, ab, ca]);
        triangles.push([ab, b, bc]);
        triangles.push([ca, bc, c]);
        triangles.push([ab, bc, ca]);
    }
    TriangleMesh::new(vertices, triangles, boundary_loop)
}

fn hex_lattice(poly: &[Point], h: f64) -> Vec<Point> {
    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for p in poly {
        for d in 0..2 {
            lo[d] = lo[d].min(p[d]);
            hi[d] = hi[d].max(p[d]);
        }
    }
    let dy = h * 3f64.sqrt() / 2.0;
    let (j0, j1) = ((lo[1] / dy).floor() as i64 - 1, (hi[1] / dy).ceil() as i64 + 1);
    let (i0, i1) = ((lo[0] / h).floor() as i64 - 1, (hi[0] / h).ceil() as i64 + 1);
    let mut out = Vec::new();
    for j in j0..=j1 {
        let shift = if j.rem_euclid(2) == 1 { 0.5 * h } else { 0.0 };
        for i in i0..=i1 {
            out.push([i as f64 * h + shift, j as f64 * dy]);
        }
    }
    out
}

fn triangulate(points: &PointSet) -> Result<Vec<[usize; 3]>, GeometryError> {
    let mut cdt: ConstrainedDelaunayTriangulation<Point2<f64>> = ConstrainedDelaunayTriangulation::new();
    let all = points.all_points();
    let mut handles = Vec::with_capacity(all.len());
    let mut owner: HashMap<usize, usize> = HashMap::with_capacity(all.len());
    for (i, p) in all.iter().enumerate() {
        let h = cdt
            .insert(Point2::new(p[0], p[1]))
            .map_err(|e| GeometryError::MeshQuality(format!("triangulation insert failed: {e:?}")))?;
        if owner.insert(h.index(), i).is_some() {
            return Err(GeometryError::MeshQuality(format!("duplicate mesh point {p:?}")));
        }
        handles.push(h);
    }
    let nb = points.boundary.len();
    for k in 0..nb {
        let (a, b) = (handles[k], handles[(k + 1) % nb]);
        if cdt.try_add_constraint(a, b).is_empty() {
            return Err(GeometryError::MeshQuality(format!("boundary segment {k} could not be enforced")));
        }
    }
    let poly = points.boundary_polyline();
    let mut out = Vec::new();
    for face in cdt.inner_faces() {
        let idx = face.vertices().map(|v| owner[&v.fix().index()]);
        let p = tri_points(&all, &idx);
        let centroid = [(p[0][0] + p[1][0] + p[2][0]) / 3.0, (p[0][1] + p[1][1] + p[2][1]) / 3.0];
        if point_in_polygon(centroid, &poly) {
            out.push(idx);
        }
    }
    // spade's face order depends on insertion history only; sort for a
    // canonical layout
    out.sort_unstable();
    Ok(out)
}

/// One Jacobi sweep of Laplacian smoothing on interior vertices.
fn smooth(points: &mut PointSet, triangles: &[[usize; 3]], h: f64) {
    let nb = points.boundary.len();
    let all = points.all_points();
    let mut sum = vec![[0.0f64; 2]; all.len()];
    let mut count = vec![0usize; all.len()];
    let mut seen: HashMap<(usize, usize), ()> = HashMap::new();
    for tri in triangles {
        for k in 0..3 {
            let (a, b) = (tri[k], tri[(k + 1) % 3]);
            if seen.insert((a.min(b), a.max(b)), ()).is_none() {
                for (u, v) in [(a, b), (b, a)] {
                    sum[u][0] += all[v][0];
                    sum[u][1] += all[v][1];
                    count[u] += 1;
                }
            }
        }
    }
    let poly = points.boundary_polyline();
    for (j, p) in points.interior.iter_mut().enumerate() {
        let i = nb + j;
        if count[i] == 0 {
            continue;
        }
        let target = [sum[i][0] / count[i] as f64, sum[i][1] / count[i] as f64];
        if point_in_polygon(target, &poly) && distance_to_polyline(target, &poly) > 0.25 * h {
            *p = target;
        }
    }
}

/// Inserts circumcentres of bad triangles, or splits the nearest boundary
/// edge when the circumcentre falls too close to (or beyond) the boundary.
fn improve(spec: &DomainSpec, points: &mut PointSet, triangles: &[[usize; 3]], bad: &[usize], h: f64) {
    let all = points.all_points();
    let poly = points.boundary_polyline();
    let nb = poly.len();
    let period = spec.period();
    let mut new_interior: Vec<Point> = Vec::new();
    let mut split_edges: Vec<usize> = Vec::new();
    for &t in bad {
        let p = tri_points(&all, &triangles[t]);
        let c = circumcenter(p);
        let inside = c.iter().all(|v| v.is_finite()) && point_in_polygon(c, &poly);
        let (edge, d) = nearest_segment(c, &poly);
        if inside && d >= 0.5 * h {
            let crowded = new_interior.iter().chain(points.interior.iter()).any(|q| dist(*q, c) < 0.4 * h);
            if !crowded {
                new_interior.push(c);
            }
        } else {
            let len = dist(poly[edge], poly[(edge + 1) % nb]);
            if len > 0.35 * h && !split_edges.contains(&edge) {
                split_edges.push(edge);
            }
        }
    }
    points.interior.extend(new_interior);

    if !split_edges.is_empty() {
        split_edges.sort_unstable();
        let mut boundary = Vec::with_capacity(nb + split_edges.len());
        let mut added = Vec::new();
        for k in 0..nb {
            boundary.push(points.boundary[k]);
            if split_edges.binary_search(&k).is_ok() {
                let ta = points.boundary[k].0;
                let tb = points.boundary[(k + 1) % nb].0;
                let tm = ta + 0.5 * (tb - ta).rem_euclid(period);
                let q = spec.point(tm);
                boundary.push((tm.rem_euclid(period), q));
                added.push(q);
            }
        }
        points.boundary = boundary;
        // drop interior points that now crowd the new boundary vertices
        points.interior.retain(|p| added.iter().all(|q| dist(*p, *q) >= 0.45 * h));
        let poly = points.boundary_polyline();
        points.interior.retain(|p| point_in_polygon(*p, &poly) && distance_to_polyline(*p, &poly) > 0.2 * h);
    }
}

fn tri_points(all: &[Point], tri: &[usize; 3]) -> [Point; 3] {
    [all[tri[0]], all[tri[1]], all[tri[2]]]
}

fn max_edge(p: [Point; 3]) -> f64 {
    dist(p[0], p[1]).max(dist(p[1], p[2])).max(dist(p[2], p[0]))
}

fn circumcenter(p: [Point; 3]) -> Point {
    let [a, b, c] = p;
    let (bx, by) = (b[0] - a[0], b[1] - a[1]);
    let (cx, cy) = (c[0] - a[0], c[1] - a[1]);
    let d = 2.0 * (bx * cy - by * cx);
    let b2 = bx * bx + by * by;
    let c2 = cx * cx + cy * cy;
    [a[0] + (cy * b2 - by * c2) / d, a[1] + (bx * c2 - cx * b2) / d]
}

pub(crate) fn point_in_polygon(p: Point, poly: &[Point]) -> bool {
    let n = poly.len();
    let mut inside = false;
    let mut j = n - 1;
    for i in 0..n {
        let (a, b) = (poly[i], poly[j]);
        if (a[1] > p[1]) != (b[1] > p[1]) {
            let x = a[0] + (p[1] - a[1]) * (b[0] - a[0]) / (b[1] - a[1]);
            if p[0] < x {
                inside = !inside;
            }
        }
        j = i;
    }
    inside
}

fn segment_distance(p: Point, a: Point, b: Point) -> f64 {
    let ab = [b[0] - a[0], b[1] - a[1]];
    let len2 = ab[0] * ab[0] + ab[1] * ab[1];
    let s = (((p[0] - a[0]) * ab[0] + (p[1] - a[1]) * ab[1]) / len2).clamp(0.0, 1.0);
    dist(p, [a[0] + s * ab[0], a[1] + s * ab[1]])
}

fn nearest_segment(p: Point, poly: &[Point]) -> (usize, f64) {
    let n = poly.len();
    (0..n)
        .map(|k| (k, segment_distance(p, poly[k], poly[(k + 1) % n])))
        .min_by(|x, y| x.1.total_cmp(&y.1))
        .unwrap()
}

fn distance_to_polyline(p: Point, poly: &[Point]) -> f64 {
    nearest_segment(p, poly).1
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn disk_boundary_on_circle() {
        let mesh = generate_mesh(&DomainSpec::disk(1.0), 0.1).unwrap();
        for &b in &mesh.boundary_loop {
            let r = mesh.vertices[b][0].hypot(mesh.vertices[b][1]);
            assert!((r - 1.0).abs() < 1e-15, "r = {r}");
        }
        assert!(mesh.min_angle_degrees() >= MIN_ANGLE_DEGREES);
        assert!(mesh.h <= 0.15);
        assert_eq!(mesh.boundary_loop.len() % 6, 0);
    }

    #[test]
    fn disk_mesh_has_sixfold_symmetry() {
        let mesh = generate_mesh(&DomainSpec::disk(1.0), 0.2).unwrap();
        let (s, c) = (PI / 3.0).sin_cos();
        for v in &mesh.vertices {
            let r = [c * v[0] - s * v[1], s * v[0] + c * v[1]];
            assert!(mesh.vertices.iter().any(|w| dist(*w, r) < 1e-12), "{v:?} has no rotated image");
        }
    }

    #[test]
    fn ellipse_area_is_second_order() {
        let spec = DomainSpec::ellipse(2.0, 1.0);
        let mesh = generate_mesh(&spec, 0.2).unwrap();
        let area: f64 = (0..mesh.num_triangles()).map(|t| mesh.signed_area(t)).sum();
        let err = (area - 2.0 * PI).abs();
        assert!(err < 0.5 * mesh.h * mesh.h, "area error {err}");
    }

    #[test]
    fn star_and_polygon_meshes() {
        let star = generate_mesh(&DomainSpec::star(0.1, 3), 0.1).unwrap();
        star.check().unwrap();
        assert!(star.min_angle_degrees() >= MIN_ANGLE_DEGREES);
        let l_shape = DomainSpec::polygon(vec![
            [0.0, 0.0],
            [2.0, 0.0],
            [2.0, 1.0],
            [1.0, 1.0],
            [1.0, 2.0],
            [0.0, 2.0],
        ]);
        let m = generate_mesh(&l_shape, 0.15).unwrap();
        let area: f64 = (0..m.num_triangles()).map(|t| m.signed_area(t)).sum();
        assert!((area - 3.0).abs() < 1e-12);
        assert!(m.min_angle_degrees() >= MIN_ANGLE_DEGREES);
        // nonconvex star
        let m = generate_mesh(&DomainSpec::star(0.3, 5), 0.08).unwrap();
        m.check().unwrap();
    }

    #[test]
    fn refine_quadruples_and_stays_on_curve() {
        let spec = DomainSpec::disk(1.0);
        let mesh = generate_mesh(&spec, 0.1).unwrap();
        let fine = refine(&mesh, &spec).unwrap();
        assert_eq!(fine.num_triangles(), 4 * mesh.num_triangles());
        assert_eq!(fine.boundary_loop.len(), 2 * mesh.boundary_loop.len());
        for &b in &fine.boundary_loop {
            let r = fine.vertices[b][0].hypot(fine.vertices[b][1]);
            assert!((r - 1.0).abs() < 1e-15);
        }
        assert!(fine.h < 0.55 * mesh.h + 1e-3);
    }

    #[test]
    fn rejects_bad_sizes() {
        assert!(matches!(
            generate_mesh(&DomainSpec::disk(1.0), 3.0),
            Err(GeometryError::InvalidMeshSize { .. })
        ));
        assert!(generate_mesh(&DomainSpec::disk(1.0), -0.1).is_err());
        assert!(generate_mesh(&DomainSpec::star(1.5, 3), 0.1).is_err());
    }
}

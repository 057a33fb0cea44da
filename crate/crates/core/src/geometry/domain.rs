//! Parametric planar domains.
//!
//! Every domain is described by a closed, counterclockwise boundary curve
//! `t -> gamma(t)` on a periodic parameter interval. Smooth kinds (disk,
//! ellipse, star, custom) use the period `2*pi`; polygons use the vertex
//! count, so that parameter `i` sits exactly on vertex `i`.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use super::GeometryError;

pub type Point = [f64; 2];

/// Samples used for arclength tables and curvature scans of smooth curves.
const CURVE_SAMPLES: usize = 8192;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DomainSpec {
    Disk { radius: f64 },
    Ellipse { a: f64, b: f64 },
    /// Polar curve `r(theta) = 1 + eps * cos(m * theta)`.
    Star { eps: f64, m: u32 },
    /// Simple counterclockwise polygon.
    Polygon { vertices: Vec<Point> },
    /// Closed curve through equispaced parameter samples, interpolated by a
    /// trigonometric polynomial.
    Custom { samples: Vec<Point> },
}

impl DomainSpec {
    pub fn disk(radius: f64) -> Self {
        DomainSpec::Disk { radius }
    }

    pub fn ellipse(a: f64, b: f64) -> Self {
        DomainSpec::Ellipse { a, b }
    }

    pub fn star(eps: f64, m: u32) -> Self {
        DomainSpec::Star { eps, m }
    }

    pub fn polygon(vertices: Vec<Point>) -> Self {
        DomainSpec::Polygon { vertices }
    }

    pub fn custom(samples: Vec<Point>) -> Self {
        DomainSpec::Custom { samples }
    }

    /// Short human-readable label, e.g. `ellipse(2,1)`.
    pub fn label(&self) -> String {
        match self {
            DomainSpec::Disk { radius } => format!("disk({radius})"),
            DomainSpec::Ellipse { a, b } => format!("ellipse({a},{b})"),
            DomainSpec::Star { eps, m } => format!("star({eps},{m})"),
            DomainSpec::Polygon { vertices } => format!("polygon({})", vertices.len()),
            DomainSpec::Custom { samples } => format!("custom({})", samples.len()),
        }
    }

    pub fn validate(&self) -> Result<(), GeometryError> {
        let bad = |msg: String| Err(GeometryError::InvalidDomain(msg));
        match self {
            DomainSpec::Disk { radius } => {
                if !(radius.is_finite() && *radius > 0.0) {
                    return bad(format!("disk radius must be positive, got {radius}"));
                }
            }
            DomainSpec::Ellipse { a, b } => {
                if !(a.is_finite() && b.is_finite() && *b > 0.0 && a >= b) {
                    return bad(format!("ellipse needs a >= b > 0, got a={a}, b={b}"));
                }
            }
            DomainSpec::Star { eps, m } => {
                if !(eps.is_finite() && *eps >= 0.0) {
                    return bad(format!("star eps must be nonnegative, got {eps}"));
                }
                // min of 1 + eps*cos(m t) is 1 - eps for m >= 1
                let min_r = if *m == 0 { 1.0 + eps } else { 1.0 - eps };
                if min_r <= 0.0 {
                    return bad(format!(
                        "star radius 1 + eps*cos(m*theta) must stay positive, eps={eps} is too large"
                    ));
                }
            }
            DomainSpec::Polygon { vertices } => {
                if vertices.len() < 3 {
                    return bad(format!("polygon needs at least 3 vertices, got {}", vertices.len()));
                }
                if vertices.iter().flatten().any(|c| !c.is_finite()) {
                    return bad("polygon has non-finite coordinates".into());
                }
                check_simple_loop(vertices).map_err(GeometryError::InvalidDomain)?;
                if shoelace(vertices) <= 0.0 {
                    return bad("polygon must be positively oriented (counterclockwise)".into());
                }
            }
            DomainSpec::Custom { samples } => {
                if samples.len() < 8 {
                    return bad(format!("custom curve needs at least 8 samples, got {}", samples.len()));
                }
                if samples.iter().flatten().any(|c| !c.is_finite()) {
                    return bad("custom curve has non-finite coordinates".into());
                }
                let dense = self.dense_polyline(4 * samples.len().max(256));
                check_simple_loop(&dense).map_err(|e| {
                    GeometryError::InvalidDomain(format!("interpolated custom curve: {e}"))
                })?;
                if shoelace(&dense) <= 0.0 {
                    return bad("custom curve must be positively oriented (counterclockwise)".into());
                }
            }
        }
        Ok(())
    }

    /// Length of the parameter interval.
    pub fn period(&self) -> f64 {
        match self {
            DomainSpec::Polygon { vertices } => vertices.len() as f64,
            _ => TAU,
        }
    }

    pub fn point(&self, t: f64) -> Point {
        match self {
            DomainSpec::Disk { radius } => [radius * t.cos(), radius * t.sin()],
            DomainSpec::Ellipse { a, b } => [a * t.cos(), b * t.sin()],
            DomainSpec::Star { eps, m } => {
                let r = 1.0 + eps * (*m as f64 * t).cos();
                [r * t.cos(), r * t.sin()]
            }
            DomainSpec::Polygon { vertices } => {
                let nv = vertices.len();
                let t = t.rem_euclid(nv as f64);
                let i = (t.floor() as usize).min(nv - 1);
                let s = t - i as f64;
                let p = vertices[i];
                let q = vertices[(i + 1) % nv];
                if s == 0.0 {
                    p
                } else {
                    [p[0] + s * (q[0] - p[0]), p[1] + s * (q[1] - p[1])]
                }
            }
            DomainSpec::Custom { samples } => fourier_eval(samples, t, 0),
        }
    }

    /// First and second parameter derivatives. Polygons return the edge
    /// direction and a zero second derivative.
    pub fn derivatives(&self, t: f64) -> (Point, Point) {
        match self {
            DomainSpec::Disk { radius } => (
                [-radius * t.sin(), radius * t.cos()],
                [-radius * t.cos(), -radius * t.sin()],
            ),
            DomainSpec::Ellipse { a, b } => ([-a * t.sin(), b * t.cos()], [-a * t.cos(), -b * t.sin()]),
            DomainSpec::Star { eps, m } => {
                let m = *m as f64;
                let r = 1.0 + eps * (m * t).cos();
                let dr = -eps * m * (m * t).sin();
                let ddr = -eps * m * m * (m * t).cos();
                let (s, c) = t.sin_cos();
                (
                    [dr * c - r * s, dr * s + r * c],
                    [ddr * c - 2.0 * dr * s - r * c, ddr * s + 2.0 * dr * c - r * s],
                )
            }
            DomainSpec::Polygon { vertices } => {
                let nv = vertices.len();
                let i = (t.rem_euclid(nv as f64).floor() as usize).min(nv - 1);
                let p = vertices[i];
                let q = vertices[(i + 1) % nv];
                ([q[0] - p[0], q[1] - p[1]], [0.0, 0.0])
            }
            DomainSpec::Custom { samples } => (fourier_eval(samples, t, 1), fourier_eval(samples, t, 2)),
        }
    }

    /// Signed curvature of the boundary at parameter `t` (positive where the
    /// domain is locally convex). `None` for polygons.
    pub fn curvature(&self, t: f64) -> Option<f64> {
        if matches!(self, DomainSpec::Polygon { .. }) {
            return None;
        }
        let (d1, d2) = self.derivatives(t);
        let speed = d1[0].hypot(d1[1]);
        Some((d1[0] * d2[1] - d1[1] * d2[0]) / speed.powi(3))
    }

    /// Lower bound `c` of the boundary curvature, from the analytic curve.
    pub fn min_curvature(&self) -> Option<f64> {
        match self {
            DomainSpec::Disk { radius } => Some(1.0 / radius),
            DomainSpec::Ellipse { a, b } => Some(b / (a * a)),
            DomainSpec::Star { eps, .. } if *eps == 0.0 => Some(1.0),
            DomainSpec::Polygon { .. } => None,
            _ => {
                let f = |t: f64| self.curvature(t).unwrap();
                Some(periodic_minimum(f, TAU))
            }
        }
    }

    pub fn is_convex(&self) -> bool {
        match self {
            DomainSpec::Polygon { vertices } => {
                let nv = vertices.len();
                (0..nv).all(|i| {
                    let a = vertices[i];
                    let b = vertices[(i + 1) % nv];
                    let c = vertices[(i + 2) % nv];
                    cross(sub(b, a), sub(c, b)) >= 0.0
                })
            }
            _ => self.min_curvature().is_some_and(|c| c >= -1e-12),
        }
    }

    /// Parameter of a point lying on the boundary curve.
    pub fn param_of(&self, p: Point) -> f64 {
        match self {
            DomainSpec::Disk { .. } | DomainSpec::Star { .. } => p[1].atan2(p[0]).rem_euclid(TAU),
            DomainSpec::Ellipse { a, b } => (p[1] / b).atan2(p[0] / a).rem_euclid(TAU),
            DomainSpec::Polygon { vertices } => {
                let nv = vertices.len();
                let mut best = (f64::INFINITY, 0.0);
                for i in 0..nv {
                    let a = vertices[i];
                    let b = vertices[(i + 1) % nv];
                    let ab = sub(b, a);
                    let len2 = dot(ab, ab);
                    let s = (dot(sub(p, a), ab) / len2).clamp(0.0, 1.0);
                    let q = [a[0] + s * ab[0], a[1] + s * ab[1]];
                    let d = dist(p, q);
                    if d < best.0 {
                        best = (d, i as f64 + s);
                    }
                }
                best.1.rem_euclid(nv as f64)
            }
            DomainSpec::Custom { samples } => {
                let coarse = 8 * samples.len();
                let mut t = (0..coarse)
                    .map(|j| TAU * j as f64 / coarse as f64)
                    .min_by(|x, y| dist(self.point(*x), p).total_cmp(&dist(self.point(*y), p)))
                    .unwrap();
                // Newton on (gamma(t) - p) . gamma'(t) = 0
                for _ in 0..30 {
                    let q = self.point(t);
                    let (d1, d2) = self.derivatives(t);
                    let r = sub(q, p);
                    let g = dot(r, d1);
                    let dg = dot(d1, d1) + dot(r, d2);
                    if dg.abs() < 1e-300 {
                        break;
                    }
                    let step = g / dg;
                    t -= step;
                    if step.abs() < 1e-15 {
                        break;
                    }
                }
                t.rem_euclid(TAU)
            }
        }
    }

    /// Parameter values of the polygon corners (kinks that must be mesh
    /// vertices). Empty for smooth curves.
    pub fn corner_params(&self) -> Vec<f64> {
        match self {
            DomainSpec::Polygon { vertices } => (0..vertices.len()).map(|i| i as f64).collect(),
            _ => Vec::new(),
        }
    }

    /// Arclength of the boundary curve. Exact for polygons; periodic
    /// trapezoidal rule (spectrally accurate) for smooth curves.
    pub fn curve_length(&self) -> f64 {
        match self {
            DomainSpec::Disk { radius } => TAU * radius,
            DomainSpec::Polygon { vertices } => {
                let nv = vertices.len();
                (0..nv).map(|i| dist(vertices[i], vertices[(i + 1) % nv])).sum()
            }
            _ => {
                let n = CURVE_SAMPLES;
                let dt = TAU / n as f64;
                (0..n)
                    .map(|j| {
                        let (d1, _) = self.derivatives(j as f64 * dt);
                        d1[0].hypot(d1[1])
                    })
                    .sum::<f64>()
                    * dt
            }
        }
    }

    /// Enclosed area of the analytic domain.
    pub fn curve_area(&self) -> f64 {
        match self {
            DomainSpec::Disk { radius } => PI * radius * radius,
            DomainSpec::Ellipse { a, b } => PI * a * b,
            DomainSpec::Star { eps, m } => {
                if *m == 0 {
                    PI * (1.0 + eps) * (1.0 + eps)
                } else {
                    PI * (1.0 + 0.5 * eps * eps)
                }
            }
            DomainSpec::Polygon { vertices } => shoelace(vertices),
            DomainSpec::Custom { .. } => {
                let n = CURVE_SAMPLES;
                let dt = TAU / n as f64;
                0.5 * (0..n)
                    .map(|j| {
                        let t = j as f64 * dt;
                        let p = self.point(t);
                        let (d1, _) = self.derivatives(t);
                        cross(p, d1)
                    })
                    .sum::<f64>()
                    * dt
            }
        }
    }

    /// Polyline through `n` equispaced parameter values (plus polygon corners).
    pub fn dense_polyline(&self, n: usize) -> Vec<Point> {
        match self {
            DomainSpec::Polygon { vertices } => vertices.clone(),
            _ => (0..n).map(|j| self.point(TAU * j as f64 / n as f64)).collect(),
        }
    }

    /// Largest distance between two boundary points (sampled).
    pub fn diameter(&self) -> f64 {
        let pts = match self {
            DomainSpec::Polygon { vertices } => vertices.clone(),
            _ => self.dense_polyline(720),
        };
        let mut d: f64 = 0.0;
        for (i, p) in pts.iter().enumerate() {
            for q in &pts[i + 1..] {
                d = d.max(dist(*p, *q));
            }
        }
        d
    }

    /// Parameter values splitting the boundary into pieces of arclength close
    /// to `h`. Polygon corners are always included.
    pub fn arclength_params(&self, h: f64) -> Vec<f64> {
        match self {
            DomainSpec::Polygon { vertices } => {
                let nv = vertices.len();
                let mut out = Vec::new();
                for i in 0..nv {
                    let len = dist(vertices[i], vertices[(i + 1) % nv]);
                    let pieces = ((len / h).round() as usize).max(1);
                    out.extend((0..pieces).map(|j| i as f64 + j as f64 / pieces as f64));
                }
                out
            }
            DomainSpec::Disk { radius } => {
                let count = round_up_to_multiple((TAU * radius / h).round() as usize, 6).max(12);
                (0..count).map(|j| TAU * j as f64 / count as f64).collect()
            }
            _ => {
                let n = CURVE_SAMPLES;
                let dt = TAU / n as f64;
                let speed: Vec<f64> = (0..=n)
                    .map(|j| {
                        let (d1, _) = self.derivatives(j as f64 * dt);
                        d1[0].hypot(d1[1])
                    })
                    .collect();
                let mut cumulative = vec![0.0; n + 1];
                for j in 0..n {
                    cumulative[j + 1] = cumulative[j] + 0.5 * (speed[j] + speed[j + 1]) * dt;
                }
                let total = cumulative[n];
                let count = round_up_to_multiple((total / h).round() as usize, 6).max(12);
                let mut out = Vec::with_capacity(count);
                let mut j = 0;
                for k in 0..count {
                    let target = total * k as f64 / count as f64;
                    while cumulative[j + 1] < target {
                        j += 1;
                    }
                    let span = cumulative[j + 1] - cumulative[j];
                    let frac = if span > 0.0 { (target - cumulative[j]) / span } else { 0.0 };
                    out.push((j as f64 + frac) * dt);
                }
                out
            }
        }
    }
}

fn round_up_to_multiple(x: usize, m: usize) -> usize {
    x.div_ceil(m) * m
}

/// Derivative of order `order` of the trigonometric interpolant through
/// equispaced samples of a closed curve.
fn fourier_eval(samples: &[Point], t: f64, order: u32) -> Point {
    let n = samples.len();
    let half = n / 2;
    let mut out = [0.0; 2];
    for (d, out_d) in out.iter_mut().enumerate() {
        let mut acc = 0.0;
        for k in 0..=half {
            let (mut ak, mut bk) = (0.0, 0.0);
            for (j, s) in samples.iter().enumerate() {
                let phase = TAU * (k * j) as f64 / n as f64;
                ak += s[d] * phase.cos();
                bk += s[d] * phase.sin();
            }
            let weight = if k == 0 || (n.is_multiple_of(2) && k == half) { 1.0 } else { 2.0 };
            ak *= weight / n as f64;
            bk *= weight / n as f64;
            let kf = k as f64;
            let (s, c) = (kf * t).sin_cos();
            // d^order/dt^order of ak cos(kt) + bk sin(kt)
            let term = match order % 4 {
                0 => ak * c + bk * s,
                1 => -ak * s + bk * c,
                2 => -ak * c - bk * s,
                _ => ak * s - bk * c,
            };
            acc += term * kf.powi(order as i32);
        }
        *out_d = acc;
    }
    out
}

/// Minimum of a smooth periodic function: dense scan, then golden-section
/// refinement around the best sample.
fn periodic_minimum(f: impl Fn(f64) -> f64, period: f64) -> f64 {
    let n = 4096;
    let dt = period / n as f64;
    let (mut best_t, mut best) = (0.0, f64::INFINITY);
    for j in 0..n {
        let t = j as f64 * dt;
        let v = f(t);
        if v < best {
            best = v;
            best_t = t;
        }
    }
    let (mut lo, mut hi) = (best_t - dt, best_t + dt);
    let g = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..80 {
        let x1 = hi - g * (hi - lo);
        let x2 = lo + g * (hi - lo);
        if f(x1) < f(x2) {
            hi = x2;
        } else {
            lo = x1;
        }
    }
    best.min(f(0.5 * (lo + hi)))
}

fn check_simple_loop(pts: &[Point]) -> Result<(), String> {
    let n = pts.len();
    for i in 0..n {
        if dist(pts[i], pts[(i + 1) % n]) == 0.0 {
            return Err(format!("repeated vertex at index {i}"));
        }
    }
    for i in 0..n {
        let (a, b) = (pts[i], pts[(i + 1) % n]);
        for j in i + 1..n {
            if j == i + 1 || (i == 0 && j == n - 1) {
                continue;
            }
            let (c, d) = (pts[j], pts[(j + 1) % n]);
            if segments_intersect(a, b, c, d) {
                return Err(format!("self-intersection between edges {i} and {j}"));
            }
        }
    }
    Ok(())
}

fn segments_intersect(a: Point, b: Point, c: Point, d: Point) -> bool {
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    if o1 * o2 < 0.0 && o3 * o4 < 0.0 {
        return true;
    }
    let on = |p: Point, q: Point, r: Point| {
        orient(p, q, r) == 0.0
            && r[0] >= p[0].min(q[0])
            && r[0] <= p[0].max(q[0])
            && r[1] >= p[1].min(q[1])
            && r[1] <= p[1].max(q[1])
    };
    on(a, b, c) || on(a, b, d) || on(c, d, a) || on(c, d, b)
}

pub(crate) fn shoelace(pts: &[Point]) -> f64 {
    let n = pts.len();
    0.5 * (0..n).map(|i| cross(pts[i], pts[(i + 1) % n])).sum::<f64>()
}

pub(crate) fn orient(a: Point, b: Point, c: Point) -> f64 {
    cross(sub(b, a), sub(c, a))
}

pub(crate) fn sub(a: Point, b: Point) -> Point {
    [a[0] - b[0], a[1] - b[1]]
}

pub(crate) fn dot(a: Point, b: Point) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

pub(crate) fn cross(a: Point, b: Point) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

pub(crate) fn dist(a: Point, b: Point) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn ellipse_min_curvature_is_b_over_a_squared() {
        let e = DomainSpec::ellipse(2.0, 1.0);
        assert_eq!(e.min_curvature(), Some(0.25));
        // independent route: scan the analytic curvature formula
        let scanned = (0..100_000)
            .map(|j| {
                let t = TAU * j as f64 / 100_000.0;
                2.0 / (4.0 * t.sin().powi(2) + t.cos().powi(2)).powf(1.5)
            })
            .fold(f64::INFINITY, f64::min);
        assert_relative_eq!(scanned, 0.25, max_relative = 1e-9);
    }

    #[test]
    fn star_curvature_matches_polar_formula() {
        let s = DomainSpec::star(0.1, 3);
        for j in 0..17 {
            let t = 0.37 * j as f64;
            let r = 1.0 + 0.1 * (3.0 * t).cos();
            let dr = -0.3 * (3.0 * t).sin();
            let ddr = -0.9 * (3.0 * t).cos();
            let k = (r * r + 2.0 * dr * dr - r * ddr) / (r * r + dr * dr).powf(1.5);
            assert_relative_eq!(s.curvature(t).unwrap(), k, max_relative = 1e-12);
        }
        // minimum at the inner lobes theta = pi/3: (r - r'')/r^2 with r = 1 - eps
        let s = DomainSpec::star(0.05, 3);
        let expect = (0.95 - 0.45) / (0.95f64 * 0.95);
        assert_relative_eq!(s.min_curvature().unwrap(), expect, max_relative = 1e-9);
        // eps = 1/(m^2 + 1) flattens the inner lobes exactly
        assert!(DomainSpec::star(0.1, 3).min_curvature().unwrap().abs() < 1e-12);
    }

    #[test]
    fn star_convexity_threshold() {
        // convex iff eps * (m^2 + 1) <= 1
        assert!(DomainSpec::star(0.1, 3).is_convex());
        assert!(!DomainSpec::star(0.11, 3).is_convex());
        assert!(!DomainSpec::star(0.3, 5).is_convex());
    }

    #[test]
    fn ellipse_perimeter() {
        // Ramanujan II is accurate to ~1e-10 relative at this aspect
        let (a, b) = (2.0f64, 1.0f64);
        let hh = ((a - b) / (a + b)).powi(2);
        let ram = PI * (a + b) * (1.0 + 3.0 * hh / (10.0 + (4.0 - 3.0 * hh).sqrt()));
        let l = DomainSpec::ellipse(a, b).curve_length();
        assert_relative_eq!(l, ram, max_relative = 1e-8);
        assert!((l - 9.6884).abs() < 1e-4);
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(DomainSpec::disk(0.0).validate().is_err());
        assert!(DomainSpec::ellipse(1.0, 2.0).validate().is_err());
        assert!(DomainSpec::star(1.0, 3).validate().is_err());
        let bowtie = DomainSpec::polygon(vec![[0.0, 0.0], [1.0, 1.0], [1.0, 0.0], [0.0, 1.0]]);
        let err = bowtie.validate().unwrap_err().to_string();
        assert!(err.contains("self-intersection"), "{err}");
        let cw = DomainSpec::polygon(vec![[0.0, 0.0], [0.0, 1.0], [1.0, 1.0], [1.0, 0.0]]);
        assert!(cw.validate().is_err());
    }

    #[test]
    fn params_round_trip() {
        for spec in [
            DomainSpec::disk(1.5),
            DomainSpec::ellipse(2.0, 1.0),
            DomainSpec::star(0.1, 3),
            DomainSpec::polygon(vec![[0.0, 0.0], [2.0, 0.0], [2.0, 1.0], [0.0, 1.0]]),
        ] {
            for j in 0..23 {
                let t = spec.period() * (j as f64 + 0.3) / 23.0;
                let back = spec.param_of(spec.point(t));
                assert!((back - t).abs() < 1e-12, "{spec:?} t={t} back={back}");
            }
        }
    }

    #[test]
    fn custom_curve_reproduces_ellipse() {
        let n = 32;
        let samples: Vec<Point> = (0..n)
            .map(|j| {
                let t = TAU * j as f64 / n as f64;
                [2.0 * t.cos(), t.sin()]
            })
            .collect();
        let c = DomainSpec::custom(samples);
        c.validate().unwrap();
        assert_relative_eq!(c.curve_area(), 2.0 * PI, max_relative = 1e-12);
        assert_relative_eq!(c.min_curvature().unwrap(), 0.25, max_relative = 1e-9);
        let t = c.param_of([0.0, 1.0]);
        assert!((t - PI / 2.0).abs() < 1e-10);
    }
}

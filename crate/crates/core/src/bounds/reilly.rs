//! Reilly's integral identity on the unit ball, evaluated exactly for
//! polynomial test functions.
//!
//! With `h = df/dnu`, `z = f` on the sphere, mean curvature 1, second
//! fundamental form equal to the metric and zero Ricci curvature:
//!
//! `int_B (Lap f)^2 - |Hess f|^2 = int_S ((n-1) h + 2 Lap_S z) h + |grad_S z|^2`.

use num::ToPrimitive;

use crate::ballspec::{
    integer, integrate_ball, integrate_sphere, sphere_laplacian, tangential_gradient_squared, Polynomial, Rational,
};
use crate::geometry::unit_sphere_area;

#[derive(Debug, Clone, PartialEq)]
pub struct ReillyReport {
    /// Interior side, in units of the sphere area.
    pub interior_exact: Rational,
    /// Boundary side, in units of the sphere area.
    pub boundary_exact: Rational,
    pub interior: f64,
    pub boundary: f64,
    /// `|interior - boundary|`.
    pub residual: f64,
}

pub fn reilly_sides(f: &Polynomial) -> ReillyReport {
    let n = f.dimension();
    let lap = f.laplacian();
    let grad = f.gradient();
    let hessian: Vec<Polynomial> = grad.iter().flat_map(|g| g.gradient()).collect();
    let interior_integrand = &(&lap * &lap) - &Polynomial::sum_of_squares(n, &hessian);
    let interior_exact = integrate_ball(&interior_integrand);

    let h = f.euler();
    let bracket = &h.scale(&integer(n as i64 - 1)) + &sphere_laplacian(f).scale(&integer(2));
    let boundary_integrand = &(&bracket * &h) + &tangential_gradient_squared(f);
    let boundary_exact = integrate_sphere(&boundary_integrand);

    let area = unit_sphere_area(n);
    let to_f64 = |r: &Rational| r.to_f64().unwrap_or(f64::NAN) * area;
    let diff = &interior_exact - &boundary_exact;
    ReillyReport {
        interior: to_f64(&interior_exact),
        boundary: to_f64(&boundary_exact),
        residual: to_f64(&diff).abs(),
        interior_exact,
        boundary_exact,
    }
}

/// `|LHS - RHS|` of the identity for `f` on the unit ball.
pub fn reilly_residual(f: &Polynomial) -> f64 {
    reilly_sides(f).residual
}

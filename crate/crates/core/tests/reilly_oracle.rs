//! Reilly's identity checked against a quadrature oracle that uses only
//! polynomial evaluation: Gauss-Legendre in the radius, the trapezoid rule
//! in the angle, and a discrete Fourier derivative for the circle Laplacian.

use std::f64::consts::PI;

use proptest::prelude::*;

use steklov_core::ballspec::{harmonic_basis, integer, Polynomial};
use steklov_core::bounds::{reilly_residual, reilly_sides};

const ANGLES: usize = 64;

/// Gauss-Legendre nodes and weights on [0, 1].
fn gauss_legendre(m: usize) -> Vec<(f64, f64)> {
    (0..m)
        .map(|i| {
            let mut x = (PI * (i as f64 + 0.75) / (m as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for j in 2..=m {
                    let jf = j as f64;
                    (p0, p1) = (p1, ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf);
                }
                dp = m as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            ((x + 1.0) / 2.0, w / 2.0)
        })
        .collect()
}

fn interior_oracle(f: &Polynomial) -> f64 {
    let grad = f.gradient();
    let hess: Vec<Polynomial> = grad.iter().flat_map(|g| g.gradient()).collect();
    let lap = f.laplacian();
    let mut total = 0.0;
    for (r, w) in gauss_legendre(12) {
        for j in 0..ANGLES {
            let t = 2.0 * PI * j as f64 / ANGLES as f64;
            let p = [r * t.cos(), r * t.sin()];
            let l = lap.eval_f64(&p);
            let h2: f64 = hess.iter().map(|h| h.eval_f64(&p).powi(2)).sum();
            total += w * r * (l * l - h2) * 2.0 * PI / ANGLES as f64;
        }
    }
    total
}

fn boundary_oracle(f: &Polynomial) -> f64 {
    let euler = f.euler();
    let pts: Vec<[f64; 2]> = (0..ANGLES)
        .map(|j| {
            let t = 2.0 * PI * j as f64 / ANGLES as f64;
            [t.cos(), t.sin()]
        })
        .collect();
    let z: Vec<f64> = pts.iter().map(|p| f.eval_f64(p)).collect();
    // Fourier coefficients of z, then first and second angular derivatives.
    let modes = ANGLES / 2 - 1;
    let mut dz = vec![0.0; ANGLES];
    let mut d2z = vec![0.0; ANGLES];
    for m in 1..=modes {
        let (mut a, mut b) = (0.0, 0.0);
        for (j, zj) in z.iter().enumerate() {
            let t = 2.0 * PI * (m * j) as f64 / ANGLES as f64;
            a += zj * t.cos() * 2.0 / ANGLES as f64;
            b += zj * t.sin() * 2.0 / ANGLES as f64;
        }
        let mf = m as f64;
        for j in 0..ANGLES {
            let t = 2.0 * PI * (m * j) as f64 / ANGLES as f64;
            dz[j] += mf * (b * t.cos() - a * t.sin());
            d2z[j] -= mf * mf * (a * t.cos() + b * t.sin());
        }
    }
    let mut total = 0.0;
    for j in 0..ANGLES {
        let h = euler.eval_f64(&pts[j]);
        total += ((h + 2.0 * d2z[j]) * h + dz[j] * dz[j]) * 2.0 * PI / ANGLES as f64;
    }
    total
}

fn parse(terms: &[(i64, u32, u32)]) -> Polynomial {
    Polynomial::from_terms(2, terms.iter().map(|&(c, i, j)| (integer(c), vec![i, j])))
}

#[test]
fn named_functions_match_oracle() {
    let cases = [
        parse(&[(1, 1, 0)]),
        parse(&[(1, 2, 0), (-1, 0, 2)]),
        parse(&[(1, 3, 0), (-3, 1, 2)]),
        parse(&[(1, 1, 1)]),
    ];
    for f in &cases {
        let r = reilly_sides(f);
        assert!(r.residual < 1e-10, "{f}: {}", r.residual);
        assert!((r.interior - interior_oracle(f)).abs() < 1e-10, "{f}");
        assert!((r.boundary - boundary_oracle(f)).abs() < 1e-10, "{f}");
    }
}

#[test]
fn harmonic_polynomials_up_to_degree_four() {
    for k in 0..=4 {
        for phi in harmonic_basis(2, k).unwrap() {
            assert!(reilly_residual(phi.poly()) < 1e-10);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn identity_holds_for_random_polynomials(
        coeffs in prop::collection::vec((-5i64..=5, 0u32..=3, 0u32..=3), 1..6)
    ) {
        let f = parse(&coeffs);
        let r = reilly_sides(&f);
        prop_assert_eq!(&r.interior_exact, &r.boundary_exact);
        let scale = r.interior.abs().max(1.0);
        prop_assert!((r.interior - interior_oracle(&f)).abs() < 1e-9 * scale);
        prop_assert!((r.boundary - boundary_oracle(&f)).abs() < 1e-9 * scale);
    }
}

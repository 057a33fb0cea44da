use std::sync::OnceLock;

use nalgebra::DMatrix;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use steklov_core::eigen::{solve_generalized_symmetric, BoundaryOperators};
use steklov_core::fem::{assemble_boundary_mass, assemble_boundary_stiffness, assemble_domain_stiffness, harmonic_extension};
use steklov_core::geometry::{generate_mesh, DomainSpec, TriangleMesh};

fn ellipse_mesh() -> &'static (TriangleMesh, BoundaryOperators) {
    static CELL: OnceLock<(TriangleMesh, BoundaryOperators)> = OnceLock::new();
    CELL.get_or_init(|| {
        let mesh = generate_mesh(&DomainSpec::ellipse(1.4, 1.0), 0.12).unwrap();
        let ops = BoundaryOperators::new(&mesh).unwrap();
        (mesh, ops)
    })
}

fn first_wentzell(ops: &BoundaryOperators, beta: f64) -> f64 {
    ops.wentzell(beta, 4).unwrap().first_nonzero().unwrap().value
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn wentzell_eigenvalue_grows_with_beta(b1 in 0.0f64..5.0, db in 0.0f64..5.0) {
        let (_, ops) = ellipse_mesh();
        let lo = first_wentzell(ops, b1);
        let hi = first_wentzell(ops, b1 + db);
        prop_assert!(lo <= hi * (1.0 + 1e-12), "lambda({b1}) = {lo} > lambda({}) = {hi}", b1 + db);
    }

    #[test]
    fn splitting_inequality_on_ellipses(a in 1.0f64..2.5, beta in 0.0f64..4.0) {
        let mesh = generate_mesh(&DomainSpec::ellipse(a, 1.0), 0.2).unwrap();
        let ops = BoundaryOperators::new(&mesh).unwrap();
        let lambda = first_wentzell(&ops, beta);
        let p1 = ops.steklov(4).unwrap().first_nonzero().unwrap().value;
        let eta1 = ops.boundary_laplacian(4).unwrap().first_nonzero().unwrap().value;
        prop_assert!(lambda >= (beta * eta1 + p1) * (1.0 - 1e-10), "{lambda} < {beta} * {eta1} + {p1}");
    }
}

#[test]
fn rayleigh_quotient_from_raw_matrices() {
    let (mesh, ops) = ellipse_mesh();
    let k = assemble_domain_stiffness(mesh).unwrap();
    let t = assemble_boundary_stiffness(mesh).unwrap();
    let m = assemble_boundary_mass(mesh).unwrap();
    let nv = mesh.num_vertices();
    for beta in [0.0, 0.7, 3.0] {
        let result = ops.wentzell(beta, 6).unwrap();
        for (lambda, z) in result.eigenvalues.iter().zip(&result.eigenvectors).skip(1) {
            let u = harmonic_extension(mesh, z).unwrap();
            let mut trace = vec![0.0; nv];
            for (&v, &zi) in mesh.boundary_loop.iter().zip(z) {
                trace[v] = zi;
            }
            let quotient = (k.quad_form(&u) + beta * t.quad_form(&trace)) / m.quad_form(&trace);
            assert!((quotient - lambda).abs() <= 1e-9 * lambda, "beta {beta}: {quotient} vs {lambda}");
        }
    }
}

#[test]
fn random_generalized_pair() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let n = 50;
    let a = DMatrix::from_fn(n, n, |_, _| rng.random_range(-1.0..1.0));
    let a = &a + a.transpose();
    let x = DMatrix::from_fn(n, n, |_, _| rng.random_range(-1.0..1.0));
    let b = &x * x.transpose() + DMatrix::identity(n, n) * n as f64;
    let pairs = solve_generalized_symmetric(&a, &b).unwrap();

    // Oracle: eigenvalues of B^-1/2 A B^-1/2 via the spectral square root of B.
    let eb = b.clone().symmetric_eigen();
    let inv_sqrt = &eb.eigenvectors
        * DMatrix::from_diagonal(&eb.eigenvalues.map(|v| 1.0 / v.sqrt()))
        * eb.eigenvectors.transpose();
    let c = &inv_sqrt * &a * &inv_sqrt;
    let mut expected: Vec<f64> = c.symmetric_eigen().eigenvalues.iter().copied().collect();
    expected.sort_by(f64::total_cmp);
    for (got, want) in pairs.values.iter().zip(&expected) {
        assert!((got - want).abs() <= 1e-10 * want.abs().max(1.0), "{got} vs {want}");
    }

    let v = &pairs.vectors;
    let gram = v.transpose() * &b * v;
    assert!((gram - DMatrix::identity(n, n)).amax() < 1e-10);
    for (j, lambda) in pairs.values.iter().enumerate() {
        let col = v.column(j);
        let residual = &a * col - (&b * col) * *lambda;
        assert!(residual.norm() <= 1e-10 * (a.norm() + lambda.abs() * b.norm()));
    }
}

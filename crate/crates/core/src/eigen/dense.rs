use nalgebra::{DMatrix, SymmetricEigen};

use super::EigenError;

/// Convergence threshold of the tridiagonal QR iteration.
pub const EIGEN_TOLERANCE: f64 = 1e-10;

/// Eigenpairs of `A v = lambda B v`, ascending; columns of `vectors` are
/// `B`-orthonormal.
#[derive(Debug, Clone)]
pub struct Eigenpairs {
    pub values: Vec<f64>,
    pub vectors: DMatrix<f64>,
}

/// Lower Cholesky factor of a symmetric positive definite matrix.
pub fn cholesky_lower(b: &DMatrix<f64>) -> Result<DMatrix<f64>, EigenError> {
    let n = b.nrows();
    let mut l = DMatrix::<f64>::zeros(n, n);
    let mut smallest = (f64::INFINITY, 0);
    for j in 0..n {
        let mut d = b[(j, j)];
        for k in 0..j {
            d -= l[(j, k)] * l[(j, k)];
        }
        if d < smallest.0 {
            smallest = (d, j);
        }
        if !(d > 0.0) || !d.is_finite() {
            return Err(EigenError::NotPositiveDefinite { index: smallest.1, pivot: smallest.0 });
        }
        let djj = d.sqrt();
        l[(j, j)] = djj;
        for i in (j + 1)..n {
            let mut s = b[(i, j)];
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)];
            }
            l[(i, j)] = s / djj;
        }
    }
    Ok(l)
}

/// Dense generalized symmetric-definite eigensolve by reduction to
/// `L^-1 A L^-T y = lambda y`.
pub fn solve_generalized_symmetric(a: &DMatrix<f64>, b: &DMatrix<f64>) -> Result<Eigenpairs, EigenError> {
    let n = a.nrows();
    if a.ncols() != n || b.nrows() != n || b.ncols() != n {
        return Err(EigenError::Shape(format!(
            "A is {}x{}, B is {}x{}",
            a.nrows(),
            a.ncols(),
            b.nrows(),
            b.ncols()
        )));
    }
    if n == 0 {
        return Ok(Eigenpairs { values: vec![], vectors: DMatrix::zeros(0, 0) });
    }
    let l = cholesky_lower(b)?;
    let x = l.solve_lower_triangular(a).expect("nonzero diagonal");
    let c = l.solve_lower_triangular(&x.transpose()).expect("nonzero diagonal");
    let c = (&c + c.transpose()) * 0.5;
    let eig = SymmetricEigen::try_new(c, EIGEN_TOLERANCE, 0)
        .ok_or_else(|| EigenError::NoConvergence("symmetric eigensolver".into()))?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]).then(i.cmp(&j)));
    let values: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let y = DMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    let mut vectors = l.transpose().solve_upper_triangular(&y).expect("nonzero diagonal");
    for mut col in vectors.column_iter_mut() {
        // deterministic sign: largest-magnitude entry positive
        let (mut big, mut at) = (0.0, 0);
        for (i, v) in col.iter().enumerate() {
            if v.abs() > big + 1e-12 * big {
                big = v.abs();
                at = i;
            }
        }
        if col[at] < 0.0 {
            col.neg_mut();
        }
    }
    Ok(Eigenpairs { values, vectors })
}

/// Consecutive runs of eigenvalues whose relative gap is below `rel_gap`.
/// Values below `floor` in magnitude are compared absolutely against it.
pub fn multiplicity_groups(values: &[f64], rel_gap: f64, floor: f64) -> Vec<Vec<usize>> {
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (i, &v) in values.iter().enumerate() {
        if let Some(last) = groups.last_mut() {
            let prev = values[*last.last().unwrap()];
            let scale = prev.abs().max(v.abs()).max(floor);
            if (v - prev).abs() <= rel_gap * scale {
                last.push(i);
                continue;
            }
        }
        groups.push(vec![i]);
    }
    groups
}

/// Largest residual `|A v - lambda B v| / (|A| + |lambda| |B|)` over all pairs
/// (infinity norms).
pub fn max_relative_residual(a: &DMatrix<f64>, b: &DMatrix<f64>, pairs: &Eigenpairs) -> f64 {
    let norm = |m: &DMatrix<f64>| m.row_iter().map(|r| r.iter().map(|v| v.abs()).sum::<f64>()).fold(0.0, f64::max);
    let (na, nb) = (norm(a), norm(b));
    let mut worst: f64 = 0.0;
    for (k, &lam) in pairs.values.iter().enumerate() {
        let v = pairs.vectors.column(k);
        let r = a * v - (b * v) * lam;
        let vn = v.amax();
        worst = worst.max(r.amax() / ((na + lam.abs() * nb) * vn));
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identity_pair() {
        let i = DMatrix::<f64>::identity(4, 4);
        let p = solve_generalized_symmetric(&i, &i).unwrap();
        assert!(p.values.iter().all(|v| (v - 1.0).abs() < 1e-14));
    }

    #[test]
    fn decoupled_ratios() {
        let a = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![1.0, 4.0]));
        let b = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![1.0, 2.0]));
        let p = solve_generalized_symmetric(&a, &b).unwrap();
        assert_relative_eq!(p.values[0], 1.0, epsilon = 1e-14);
        assert_relative_eq!(p.values[1], 2.0, epsilon = 1e-14);
    }

    #[test]
    fn random_spd_pair() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let n = 50;
        let g = DMatrix::from_fn(n, n, |_, _| rng.random_range(-1.0..1.0));
        let h = DMatrix::from_fn(n, n, |_, _| rng.random_range(-1.0..1.0));
        let a = &g + g.transpose();
        let b = &h * h.transpose() + DMatrix::identity(n, n) * (n as f64) * 0.1;
        let p = solve_generalized_symmetric(&a, &b).unwrap();
        assert!(p.values.windows(2).all(|w| w[0] <= w[1]));
        assert!(max_relative_residual(&a, &b, &p) < 1e-8);
        let gram = p.vectors.transpose() * &b * &p.vectors;
        assert!((gram - DMatrix::identity(n, n)).amax() < 1e-10);
    }

    #[test]
    fn indefinite_mass_reports_pivot() {
        let a = DMatrix::identity(2, 2);
        let b = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 1.0]);
        match solve_generalized_symmetric(&a, &b) {
            Err(EigenError::NotPositiveDefinite { index, pivot }) => {
                assert_eq!(index, 1);
                assert_relative_eq!(pivot, -3.0);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn grouping() {
        let g = multiplicity_groups(&[0.0, 1e-15, 1.0, 1.0 + 1e-9, 2.0], 1e-6, 1e-6);
        assert_eq!(g, vec![vec![0, 1], vec![2, 3], vec![4]]);
    }
}

use num::{One, Zero};

use super::polynomial::{integer, Polynomial, Rational};
use super::BallError;

/// Homogeneous harmonic polynomial of a fixed degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HarmonicPolynomial {
    poly: Polynomial,
    degree: u32,
}

impl HarmonicPolynomial {
    pub fn new(poly: Polynomial, degree: u32) -> Result<Self, BallError> {
        if !poly.is_homogeneous(degree) {
            return Err(BallError::NotHomogeneous { degree, poly: poly.to_string() });
        }
        if !poly.is_harmonic() {
            return Err(BallError::NotHarmonic(poly.to_string()));
        }
        Ok(HarmonicPolynomial { poly, degree })
    }

    pub fn poly(&self) -> &Polynomial {
        &self.poly
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn dimension(&self) -> usize {
        self.poly.dimension()
    }
}

/// Exponent vectors of all degree-`k` monomials in `n` variables, in
/// descending lexicographic order.
pub fn monomials(n: usize, k: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, k: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == n - 1 {
            prefix.push(k);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in (0..=k).rev() {
            prefix.push(first);
            rec(n, k - first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, k, &mut Vec::with_capacity(n), &mut out);
    out
}

fn check_dimension(n: usize) -> Result<(), BallError> {
    if n < 2 {
        return Err(BallError::InvalidDimension(n));
    }
    Ok(())
}

/// Dimension of the space of degree-`k` harmonic homogeneous polynomials in
/// `n` variables, `C(n+k-1, n-1) - C(n+k-3, n-1)`.
pub fn mu(n: usize, k: u32) -> Result<u64, BallError> {
    check_dimension(n)?;
    let binom = |top: i64, bottom: i64| -> u64 {
        if top < bottom || top < 0 {
            0
        } else {
            num::integer::binomial(top as u64, bottom as u64)
        }
    };
    let (n, k) = (n as i64, k as i64);
    Ok(binom(n + k - 1, n - 1) - binom(n + k - 3, n - 1))
}

/// Basis of the degree-`k` harmonic homogeneous polynomials, obtained as an
/// exact nullspace basis of the Laplacian on degree-`k` monomials.
pub fn harmonic_basis(n: usize, k: u32) -> Result<Vec<HarmonicPolynomial>, BallError> {
    check_dimension(n)?;
    let cols = monomials(n, k);
    let rows = if k >= 2 { monomials(n, k - 2) } else { Vec::new() };
    let row_index: std::collections::HashMap<&Vec<u32>, usize> = rows.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let mut a = vec![vec![Rational::zero(); cols.len()]; rows.len()];
    for (j, e) in cols.iter().enumerate() {
        for i in 0..n {
            if e[i] >= 2 {
                let mut f = e.clone();
                f[i] -= 2;
                a[row_index[&f]][j] += integer((e[i] * (e[i] - 1)) as i64);
            }
        }
    }
    let pivots = row_reduce(&mut a, cols.len());
    let mut is_pivot = vec![None; cols.len()];
    for (r, &c) in pivots.iter().enumerate() {
        is_pivot[c] = Some(r);
    }
    let mut basis = Vec::new();
    for free in (0..cols.len()).filter(|&c| is_pivot[c].is_none()) {
        let mut terms = vec![(Rational::one(), cols[free].clone())];
        for (r, &c) in pivots.iter().enumerate() {
            if !a[r][free].is_zero() {
                terms.push((-a[r][free].clone(), cols[c].clone()));
            }
        }
        basis.push(HarmonicPolynomial::new(Polynomial::from_terms(n, terms), k)?);
    }
    Ok(basis)
}

/// Reduced row echelon form in place; returns the pivot column of each
/// nonzero row.
fn row_reduce(a: &mut [Vec<Rational>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = Rational::one() / a[r][c].clone();
        for v in a[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let factor = a[i][c].clone();
                for j in 0..ncols {
                    let delta = &factor * &a[r][j];
                    a[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_degree_bases() {
        let b = harmonic_basis(2, 1).unwrap();
        assert_eq!(b.len(), 2);
        assert_eq!(b[0].poly(), &Polynomial::var(2, 0));
        assert_eq!(b[1].poly(), &Polynomial::var(2, 1));
        let b0 = harmonic_basis(2, 0).unwrap();
        assert_eq!(b0.len(), 1);
        assert_eq!(b0[0].poly(), &Polynomial::one(2));
        assert_eq!(harmonic_basis(3, 2).unwrap().len(), 5);
    }

    #[test]
    fn mu_values() {
        assert_eq!(mu(3, 2).unwrap(), 5);
        assert_eq!(mu(4, 2).unwrap(), 9);
        for k in 1..8 {
            assert_eq!(mu(2, k).unwrap(), 2);
        }
        for n in 2..6 {
            assert_eq!(mu(n, 0).unwrap(), 1);
            assert_eq!(mu(n, 1).unwrap(), n as u64);
            assert_eq!(mu(n, 2).unwrap(), ((n * n + n - 2) / 2) as u64);
        }
        assert!(matches!(mu(1, 2), Err(BallError::InvalidDimension(1))));
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials(3, 2).len(), 6);
        assert_eq!(monomials(2, 3), vec![vec![3, 0], vec![2, 1], vec![1, 2], vec![0, 3]]);
    }

    #[test]
    fn rejects_non_harmonic() {
        assert!(HarmonicPolynomial::new(Polynomial::radius_squared(2), 2).is_err());
        assert!(HarmonicPolynomial::new(Polynomial::var(2, 0), 2).is_err());
    }
}

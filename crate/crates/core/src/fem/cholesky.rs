//! Envelope (skyline) Cholesky factorization of a principal submatrix of a
//! sparse SPD matrix, with reverse Cuthill-McKee ordering.

use std::collections::VecDeque;

use super::{FemError, SparseSymMatrix};

/// Factor `L L^T = P A_SS P^T` where `A_SS` is the principal submatrix of
/// `A` on the index set `S` and `P` the RCM permutation.
#[derive(Debug, Clone)]
pub struct EnvelopeCholesky {
    /// `perm[new] = position in the subset`.
    perm: Vec<usize>,
    /// First stored column of each row of `L`.
    first: Vec<usize>,
    /// Offset of row `i`'s stored segment in `data`.
    start: Vec<usize>,
    data: Vec<f64>,
}

impl EnvelopeCholesky {
    /// Factors `A` restricted to `subset` (indices into `A`). Right-hand
    /// sides passed to [`EnvelopeCholesky::solve`] are ordered like `subset`.
    pub fn factor(a: &SparseSymMatrix, subset: &[usize]) -> Result<Self, FemError> {
        let n = subset.len();
        let mut local = vec![usize::MAX; a.dim()];
        for (k, &i) in subset.iter().enumerate() {
            local[i] = k;
        }
        let adjacency: Vec<Vec<usize>> = subset
            .iter()
            .map(|&i| {
                a.row(i)
                    .filter(|&(j, v)| j != i && v != 0.0 && local[j] != usize::MAX)
                    .map(|(j, _)| local[j])
                    .collect()
            })
            .collect();
        let perm = reverse_cuthill_mckee(&adjacency);
        let mut inv = vec![0usize; n];
        for (new, &old) in perm.iter().enumerate() {
            inv[old] = new;
        }

        let mut first: Vec<usize> = (0..n).collect();
        for (old, nbrs) in adjacency.iter().enumerate() {
            let i = inv[old];
            for &o in nbrs {
                let j = inv[o];
                if j < i {
                    first[i] = first[i].min(j);
                }
            }
        }
        let mut start = vec![0usize; n + 1];
        for i in 0..n {
            start[i + 1] = start[i] + (i - first[i] + 1);
        }
        let mut data = vec![0.0; start[n]];
        for (new_i, &old_i) in perm.iter().enumerate() {
            for (j, v) in a.row(subset[old_i]) {
                if local[j] == usize::MAX {
                    continue;
                }
                let new_j = inv[local[j]];
                if new_j <= new_i {
                    data[start[new_i] + new_j - first[new_i]] = v;
                }
            }
        }

        for i in 0..n {
            let fi = first[i];
            for j in fi..=i {
                let fj = first[j];
                let lo = fi.max(fj);
                let mut s = data[start[i] + j - fi];
                let (ri, rj) = (start[i] + lo - fi, start[j] + lo - fj);
                for k in 0..(j - lo) {
                    s -= data[ri + k] * data[rj + k];
                }
                if j < i {
                    data[start[i] + j - fi] = s / data[start[j] + j - fj];
                } else {
                    if !(s > 0.0) || !s.is_finite() {
                        return Err(FemError::NotPositiveDefinite { index: subset[perm[i]], pivot: s });
                    }
                    data[start[i] + i - fi] = s.sqrt();
                }
            }
        }
        Ok(EnvelopeCholesky { perm, first, start, data })
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    /// Stored entries of the factor.
    pub fn envelope_size(&self) -> usize {
        self.data.len()
    }

    pub fn solve(&self, rhs: &[f64]) -> Vec<f64> {
        let n = self.dim();
        assert_eq!(rhs.len(), n);
        let mut y: Vec<f64> = self.perm.iter().map(|&old| rhs[old]).collect();
        for i in 0..n {
            let fi = self.first[i];
            let row = &self.data[self.start[i]..self.start[i + 1]];
            let s: f64 = row[..i - fi].iter().zip(&y[fi..i]).map(|(l, v)| l * v).sum();
            y[i] = (y[i] - s) / row[i - fi];
        }
        for i in (0..n).rev() {
            let fi = self.first[i];
            let row = &self.data[self.start[i]..self.start[i + 1]];
            y[i] /= row[i - fi];
            let yi = y[i];
            for (l, v) in row[..i - fi].iter().zip(&mut y[fi..i]) {
                *v -= l * yi;
            }
        }
        let mut out = vec![0.0; n];
        for (new, &old) in self.perm.iter().enumerate() {
            out[old] = y[new];
        }
        out
    }
}

/// Reverse Cuthill-McKee ordering; returns `perm[new] = old`.
fn reverse_cuthill_mckee(adjacency: &[Vec<usize>]) -> Vec<usize> {
    let n = adjacency.len();
    let degree: Vec<usize> = adjacency.iter().map(Vec::len).collect();
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        // lowest-degree unvisited vertex, pushed to a pseudo-peripheral one
        let seed = (0..n).filter(|&v| !visited[v]).min_by_key(|&v| (degree[v], v)).unwrap();
        let root = pseudo_peripheral(adjacency, &degree, seed);
        let mut queue = VecDeque::from([root]);
        visited[root] = true;
        while let Some(v) = queue.pop_front() {
            order.push(v);
            let mut nbrs: Vec<usize> = adjacency[v].iter().copied().filter(|&w| !visited[w]).collect();
            nbrs.sort_unstable_by_key(|&w| (degree[w], w));
            nbrs.dedup();
            for w in nbrs {
                visited[w] = true;
                queue.push_back(w);
            }
        }
    }
    order.reverse();
    order
}

fn pseudo_peripheral(adjacency: &[Vec<usize>], degree: &[usize], seed: usize) -> usize {
    let mut root = seed;
    let mut ecc = 0;
    for _ in 0..8 {
        let levels = bfs_levels(adjacency, root);
        let depth = *levels.iter().filter(|l| **l != usize::MAX).max().unwrap();
        if depth <= ecc && root != seed {
            break;
        }
        ecc = depth;
        let candidate = (0..adjacency.len())
            .filter(|&v| levels[v] == depth)
            .min_by_key(|&v| (degree[v], v))
            .unwrap();
        if candidate == root {
            break;
        }
        root = candidate;
    }
    root
}

fn bfs_levels(adjacency: &[Vec<usize>], root: usize) -> Vec<usize> {
    let mut level = vec![usize::MAX; adjacency.len()];
    level[root] = 0;
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        for &w in &adjacency[v] {
            if level[w] == usize::MAX {
                level[w] = level[v] + 1;
                queue.push_back(w);
            }
        }
    }
    level
}

#[cfg(test)]
mod tests {
    use super::*;

    fn laplacian_1d(n: usize) -> SparseSymMatrix {
        let mut t = Vec::new();
        for i in 0..n {
            t.push((i, i, 2.0));
            if i + 1 < n {
                t.push((i, i + 1, -1.0));
                t.push((i + 1, i, -1.0));
            }
        }
        SparseSymMatrix::from_triplets(n, t)
    }

    #[test]
    fn solves_tridiagonal_system() {
        let a = laplacian_1d(50);
        let all: Vec<usize> = (0..50).collect();
        let chol = EnvelopeCholesky::factor(&a, &all).unwrap();
        let x: Vec<f64> = (0..50).map(|i| (i as f64 * 0.3).sin()).collect();
        let b = a.matvec(&x);
        let y = chol.solve(&b);
        for (u, v) in x.iter().zip(&y) {
            assert!((u - v).abs() < 1e-10);
        }
        // RCM keeps a path graph banded
        assert!(chol.envelope_size() <= 2 * 50);
    }

    #[test]
    fn subset_factor_and_failure() {
        let a = laplacian_1d(6);
        let sub = [4, 1, 2];
        let chol = EnvelopeCholesky::factor(&a, &sub).unwrap();
        // A restricted to {4,1,2}: diag 2, coupling only between 1 and 2
        let x = chol.solve(&[2.0, 1.0, 1.0]);
        assert!((x[0] - 1.0).abs() < 1e-14);
        assert!((x[1] - 1.0).abs() < 1e-14 && (x[2] - 1.0).abs() < 1e-14);

        let singular = SparseSymMatrix::from_triplets(2, vec![(0, 0, 1.0), (0, 1, 1.0), (1, 0, 1.0), (1, 1, 1.0)]);
        assert!(matches!(
            EnvelopeCholesky::factor(&singular, &[0, 1]),
            Err(FemError::NotPositiveDefinite { .. })
        ));
    }
}

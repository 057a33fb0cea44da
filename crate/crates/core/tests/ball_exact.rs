use num::Zero;

use steklov_core::ballspec::{
    exact_rayleigh, harmonic_basis, integer, mu, psi_eigenfunction, rational, verify_boundary_conditions,
    BiharmonicProblem, Rational,
};

fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < k {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn basis_sizes_match_multiplicities() {
    for n in 2..=5usize {
        assert_eq!(mu(n, 0).unwrap(), 1);
        assert_eq!(mu(n, 1).unwrap(), n as u64);
        assert_eq!(mu(n, 2).unwrap(), ((n * n + n - 2) / 2) as u64);
        for k in 0..=5u32 {
            let ni = n as i64;
            let ki = k as i64;
            let expected = binomial(ni + ki - 1, ni - 1) - binomial(ni + ki - 3, ni - 1);
            assert_eq!(mu(n, k).unwrap() as i64, expected, "n={n} k={k}");
            assert_eq!(harmonic_basis(n, k).unwrap().len() as i64, expected, "n={n} k={k}");
        }
    }
}

#[test]
fn every_basis_element_is_an_exact_eigenfunction() {
    for n in 2..=5usize {
        for k in 0..=5u32 {
            let ni = n as i64;
            let ki = k as i64;
            let xi = integer(ki * ki * (ni + 2 * ki));
            let zeta = if k == 0 { Rational::zero() } else { rational(2 * ki * ki + ni * ki, ki + ni - 2) };
            for phi in harmonic_basis(n, k).unwrap() {
                let psi = psi_eigenfunction(&phi);
                for problem in [BiharmonicProblem::Xi, BiharmonicProblem::Zeta] {
                    verify_boundary_conditions(&psi, problem, n, k)
                        .unwrap_or_else(|e| panic!("n={n} k={k} {problem:?}: {e}"));
                }
                assert_eq!(exact_rayleigh(&psi, BiharmonicProblem::Xi).unwrap(), xi, "n={n} k={k}");
                if k > 0 {
                    assert_eq!(exact_rayleigh(&psi, BiharmonicProblem::Zeta).unwrap(), zeta, "n={n} k={k}");
                }
            }
        }
    }
}

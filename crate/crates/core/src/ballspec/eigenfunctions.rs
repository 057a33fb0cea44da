use num::Zero;

use super::basis::HarmonicPolynomial;
use super::moments::{integrate_ball, integrate_sphere};
use super::polynomial::{integer, Polynomial, Rational};
use super::spectrum::{ball_eigenvalue, BallProblem};
use super::BallError;

/// The two biharmonic Steklov problems on the unit ball: eigenvalue in the
/// third-order condition (`Xi`) or on the boundary Laplacian (`Zeta`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BiharmonicProblem {
    Xi,
    Zeta,
}

impl BiharmonicProblem {
    fn ball_problem(self) -> BallProblem {
        match self {
            BiharmonicProblem::Xi => BallProblem::Xi,
            BiharmonicProblem::Zeta => BallProblem::Zeta,
        }
    }

    pub fn eigenvalue(self, n: usize, k: u32) -> Result<Rational, BallError> {
        ball_eigenvalue(&self.ball_problem(), n, k)
    }
}

/// `-2 phi + k (|x|^2 - 1) phi` for `phi` of degree `k`.
pub fn psi_eigenfunction(phi: &HarmonicPolynomial) -> Polynomial {
    let n = phi.dimension();
    let p = phi.poly();
    let shell = &Polynomial::radius_squared(n) - &Polynomial::one(n);
    &p.scale(&integer(-2)) + &(&shell * p).scale(&integer(phi.degree() as i64))
}

fn euler_power(p: &Polynomial, times: u32) -> Polynomial {
    (0..times).fold(p.clone(), |acc, _| acc.euler())
}

/// `Lambda^times p` with the Euler operator `Lambda = sum x_i d/dx_i`.
pub fn euler_apply(p: &Polynomial, times: u32) -> Result<Polynomial, BallError> {
    if times == 0 {
        return Err(BallError::InvalidParameter("the Euler operator power must be positive".into()));
    }
    Ok(euler_power(p, times))
}

/// Residual of the radial relation satisfied by the harmonic generator of
/// an eigenfunction; zero for every harmonic homogeneous `z` when the exact
/// eigenvalue of its degree is substituted.
///
/// `Xi`: `n L^2 z + 2 L^3 z - xi z`.
/// `Zeta`: `2 L^3 z + n L^2 z - zeta (L^2 z + (n-2) L z)`.
pub fn check_relation(z: &Polynomial, problem: BiharmonicProblem) -> Result<Polynomial, BallError> {
    if !z.is_harmonic() {
        return Err(BallError::NotHarmonic(z.to_string()));
    }
    let k = z.degree().unwrap_or(0);
    if !z.is_homogeneous(k) {
        return Err(BallError::NotHomogeneous { degree: k, poly: z.to_string() });
    }
    let n = z.dimension();
    let nn = integer(n as i64);
    let value = problem.eigenvalue(n, k)?;
    let (l1, l2, l3) = (euler_power(z, 1), euler_power(z, 2), euler_power(z, 3));
    let lhs = &l2.scale(&nn) + &l3.scale(&integer(2));
    Ok(match problem {
        BiharmonicProblem::Xi => &lhs - &z.scale(&value),
        BiharmonicProblem::Zeta => &lhs - &(&l2 + &l1.scale(&integer(n as i64 - 2))).scale(&value),
    })
}

/// Laplace-Beltrami operator of the unit sphere applied to the restriction
/// of `f`, written as an ambient polynomial:
/// `Lap f - L^2 f - (n-2) L f`.
pub fn sphere_laplacian(f: &Polynomial) -> Polynomial {
    let n = f.dimension() as i64;
    let l1 = f.euler();
    let l2 = l1.euler();
    &(&f.laplacian() - &l2) - &l1.scale(&integer(n - 2))
}

/// Squared tangential gradient on the unit sphere, `|grad f|^2 - (L f)^2`.
pub fn tangential_gradient_squared(f: &Polynomial) -> Polynomial {
    let n = f.dimension();
    let l1 = f.euler();
    &Polynomial::sum_of_squares(n, &f.gradient()) - &(&l1 * &l1)
}

/// Exact residuals of a candidate ball eigenfunction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryResiduals {
    /// `Lap^2 psi` on the whole ball.
    pub bilaplacian: Polynomial,
    /// Normal derivative `L psi` restricted to the sphere.
    pub normal_derivative: Polynomial,
    /// The eigenvalue condition restricted to the sphere.
    pub eigen_condition: Polynomial,
}

impl BoundaryResiduals {
    pub fn all_zero(&self) -> bool {
        self.bilaplacian.is_zero() && self.normal_derivative.is_zero() && self.eigen_condition.is_zero()
    }
}

/// Checks `psi` against the biharmonic problem with the order-`k`
/// eigenvalue on the unit ball. Restrictions to the sphere are taken modulo
/// `|x|^2 - 1`.
pub fn verify_boundary_conditions(
    psi: &Polynomial,
    problem: BiharmonicProblem,
    n: usize,
    k: u32,
) -> Result<BoundaryResiduals, BallError> {
    if psi.dimension() != n {
        return Err(BallError::InvalidParameter(format!(
            "polynomial has {} variables, expected {n}",
            psi.dimension()
        )));
    }
    let value = problem.eigenvalue(n, k)?;
    let lap = psi.laplacian();
    let flux = lap.euler();
    let condition = match problem {
        BiharmonicProblem::Xi => &flux + &psi.scale(&value),
        BiharmonicProblem::Zeta => &flux - &sphere_laplacian(psi).scale(&value),
    };
    let residuals = BoundaryResiduals {
        bilaplacian: lap.laplacian(),
        normal_derivative: psi.euler().reduce_on_sphere(),
        eigen_condition: condition.reduce_on_sphere(),
    };
    if residuals.all_zero() {
        Ok(residuals)
    } else {
        Err(BallError::NonzeroResidual(Box::new(residuals)))
    }
}

/// Exact Rayleigh quotient on the unit ball: `int_B (Lap psi)^2` over
/// `int_S psi^2` (`Xi`) or over `int_S |grad_T psi|^2` (`Zeta`). The common
/// sphere-area factor cancels.
pub fn exact_rayleigh(psi: &Polynomial, problem: BiharmonicProblem) -> Result<Rational, BallError> {
    if !psi.euler().reduce_on_sphere().is_zero() {
        return Err(BallError::InvalidParameter(format!("{psi} has nonzero normal derivative on the sphere")));
    }
    let lap = psi.laplacian();
    let numerator = integrate_ball(&(&lap * &lap));
    let denominator = match problem {
        BiharmonicProblem::Xi => integrate_sphere(&(psi * psi)),
        BiharmonicProblem::Zeta => integrate_sphere(&tangential_gradient_squared(psi)),
    };
    if denominator.is_zero() {
        return Err(BallError::ZeroDenominator(psi.to_string()));
    }
    Ok(numerator / denominator)
}

/// Splits a biharmonic polynomial as `g + |x|^2 h` with `g`, `h` harmonic.
/// Per degree `d`, `h_{d-2} = Lap u_d / (2n + 4(d-2))`.
pub fn biharmonic_split(u: &Polynomial) -> Result<(Polynomial, Polynomial), BallError> {
    if !u.laplacian().laplacian().is_zero() {
        return Err(BallError::NotBiharmonic(u.to_string()));
    }
    let n = u.dimension();
    let r2 = Polynomial::radius_squared(n);
    let mut g = Polynomial::zero(n);
    let mut h = Polynomial::zero(n);
    for d in 0..=u.degree().unwrap_or(0) {
        let ud = u.homogeneous_part(d);
        if ud.is_zero() {
            continue;
        }
        let hd = if d >= 2 {
            ud.laplacian().scale(&(Rational::from_integer(1.into()) / integer(2 * n as i64 + 4 * (d as i64 - 2))))
        } else {
            Polynomial::zero(n)
        };
        g = &g + &(&ud - &(&r2 * &hd));
        h = &h + &hd;
    }
    debug_assert!(g.is_harmonic() && h.is_harmonic());
    Ok((g, h))
}

use std::fmt::Write as _;

use num::{Signed, Zero};

use super::basis::mu;
use super::polynomial::{integer, Rational};
use super::BallError;

/// Boundary problems with closed-form spectra on balls.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BallProblem {
    /// Wentzell problem on the ball of radius `radius`.
    Wentzell { beta: Rational, radius: Rational },
    /// Second-order Steklov problem on the ball of radius `radius`.
    Steklov { radius: Rational },
    /// Biharmonic Steklov problem with eigenvalue in the normal-derivative
    /// condition, unit ball.
    Xi,
    /// Biharmonic Steklov problem with eigenvalue on the boundary
    /// Laplacian, unit ball.
    Zeta,
    /// Fourth-order problem with a Hessian term; only the fundamental tone
    /// is known in closed form.
    TauTone { tau: Rational, radius: Rational },
}

impl BallProblem {
    pub fn name(&self) -> &'static str {
        match self {
            BallProblem::Wentzell { .. } => "wentzell",
            BallProblem::Steklov { .. } => "steklov",
            BallProblem::Xi => "xi",
            BallProblem::Zeta => "zeta",
            BallProblem::TauTone { .. } => "tau_tone",
        }
    }

    /// Name with parameters, free of commas.
    pub fn label(&self) -> String {
        match self {
            BallProblem::Wentzell { beta, radius } => format!("wentzell[beta={beta};R={radius}]"),
            BallProblem::Steklov { radius } => format!("steklov[R={radius}]"),
            BallProblem::Xi => "xi".into(),
            BallProblem::Zeta => "zeta".into(),
            BallProblem::TauTone { tau, radius } => format!("tau_tone[tau={tau};R={radius}]"),
        }
    }

    /// Largest order with a closed-form eigenvalue, if bounded.
    pub fn max_order(&self) -> Option<u32> {
        match self {
            BallProblem::TauTone { .. } => Some(1),
            _ => None,
        }
    }

    fn validate(&self) -> Result<(), BallError> {
        let positive = |name: &str, v: &Rational| {
            if v.is_positive() {
                Ok(())
            } else {
                Err(BallError::InvalidParameter(format!("{name} must be positive, got {v}")))
            }
        };
        match self {
            BallProblem::Wentzell { beta, radius } => {
                positive("R", radius)?;
                if beta.is_negative() {
                    return Err(BallError::InvalidParameter(format!("beta must be nonnegative, got {beta}")));
                }
                Ok(())
            }
            BallProblem::Steklov { radius } => positive("R", radius),
            BallProblem::TauTone { tau, radius } => {
                positive("R", radius)?;
                positive("tau", tau)
            }
            BallProblem::Xi | BallProblem::Zeta => Ok(()),
        }
    }
}

/// Exact `k`-th distinct eigenvalue of `problem` on the `n`-ball.
pub fn ball_eigenvalue(problem: &BallProblem, n: usize, k: u32) -> Result<Rational, BallError> {
    if n < 2 {
        return Err(BallError::InvalidDimension(n));
    }
    problem.validate()?;
    let (nn, kk) = (integer(n as i64), integer(k as i64));
    Ok(match problem {
        BallProblem::Wentzell { beta, radius } => {
            let two = integer(2);
            (&kk * (&kk + &nn - &two) * beta + &kk * radius) / (radius * radius)
        }
        BallProblem::Steklov { radius } => &kk / radius,
        BallProblem::Xi => &kk * &kk * (&nn + integer(2) * &kk),
        BallProblem::Zeta => {
            if k == 0 {
                Rational::zero()
            } else {
                (integer(2) * &kk * &kk + &nn * &kk) / (&kk + &nn - integer(2))
            }
        }
        BallProblem::TauTone { tau, radius } => match k {
            0 => Rational::zero(),
            1 => tau / radius,
            _ => {
                return Err(BallError::InvalidOrder {
                    k,
                    reason: "only the fundamental tone of this problem is known in closed form".into(),
                })
            }
        },
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BallSpectrumEntry {
    pub problem: BallProblem,
    pub n: usize,
    pub k: u32,
    pub eigenvalue: Rational,
    pub multiplicity: u64,
}

/// Entries for orders `0..=k_max` (capped at the problem's known orders).
pub fn ball_spectrum(problem: &BallProblem, n: usize, k_max: u32) -> Result<Vec<BallSpectrumEntry>, BallError> {
    let top = problem.max_order().map_or(k_max, |m| m.min(k_max));
    (0..=top)
        .map(|k| {
            Ok(BallSpectrumEntry {
                problem: problem.clone(),
                n,
                k,
                eigenvalue: ball_eigenvalue(problem, n, k)?,
                multiplicity: mu(n, k)?,
            })
        })
        .collect()
}

/// CSV with columns `problem,n,k,eigenvalue,multiplicity`; eigenvalues
/// printed exactly as `p/q` (integers without a denominator).
pub fn spectrum_table_csv(entries: &[BallSpectrumEntry]) -> String {
    let mut s = String::from("problem,n,k,eigenvalue,multiplicity\n");
    for e in entries {
        let _ = writeln!(s, "{},{},{},{},{}", e.problem.label(), e.n, e.k, e.eigenvalue, e.multiplicity);
    }
    s
}

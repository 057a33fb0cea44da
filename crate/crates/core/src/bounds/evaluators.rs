//! Closed-form eigenvalue bounds. Each evaluator checks the hypotheses of
//! its inequality and returns [`NotApplicable`] when they fail.

use thiserror::Error;

use crate::geometry::unit_ball_volume;

/// Hypotheses of a bound are not met; carries the reason.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("not applicable: {0}")]
pub struct NotApplicable(pub String);

type Bound = Result<f64, NotApplicable>;

fn positive(name: &str, v: f64) -> Result<(), NotApplicable> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(NotApplicable(format!("{name} must be positive, got {v}")))
    }
}

fn nonnegative(name: &str, v: f64) -> Result<(), NotApplicable> {
    if v.is_finite() && v >= 0.0 {
        Ok(())
    } else {
        Err(NotApplicable(format!("{name} must be nonnegative, got {v}")))
    }
}

fn dimension(n: usize) -> Result<f64, NotApplicable> {
    if n >= 2 {
        Ok(n as f64)
    } else {
        Err(NotApplicable(format!("dimension must be at least 2, got {n}")))
    }
}

/// Square root of a discriminant that may sit a few ulps below zero when it
/// vanishes analytically.
fn discriminant_sqrt(d: f64, scale: f64) -> Result<f64, NotApplicable> {
    if d >= 0.0 {
        Ok(d.sqrt())
    } else if d >= -1e-12 * scale {
        Ok(0.0)
    } else {
        Err(NotApplicable(format!("negative discriminant {d:e}")))
    }
}

/// `(2 eta1 + kappa)^2 - 4(n-1) eta1 c^2`, expanded so that the only
/// cancellation is in `eta1 - (n-1)c^2`, which vanishes on balls.
fn curvature_discriminant(eta1: f64, kappa: f64, c: f64, nf: f64) -> f64 {
    kappa * kappa + 4.0 * eta1 * kappa + 4.0 * eta1 * (eta1 - (nf - 1.0) * c * c)
}

/// Upper bound for the first nonzero Wentzell eigenvalue from boundary
/// convexity `c` and a Ricci lower bound `-kappa0`:
/// `beta eta1 + (2 eta1 + kappa0 + sqrt((2 eta1 + kappa0)^2 - 4(n-1) eta1 c^2)) / (2(n-1)c)`.
pub fn wentzell_upper_curvature(eta1: f64, kappa0: f64, c: f64, beta: f64, n: usize) -> Bound {
    let nf = dimension(n)?;
    positive("c", c)?;
    positive("eta1", eta1)?;
    positive("beta", beta)?;
    nonnegative("kappa0", kappa0)?;
    let a = 2.0 * eta1 + kappa0;
    let d = curvature_discriminant(eta1, kappa0, c, nf);
    let root = discriminant_sqrt(d, a * a)?;
    Ok(beta * eta1 + (a + root) / (2.0 * (nf - 1.0) * c))
}

/// Isoperimetric upper bound for the first nonzero Wentzell eigenvalue of a
/// Euclidean domain: `(n|O| + beta(n-1)|dO|) / (n|O| (|O|/omega_n)^(1/n))`.
pub fn wentzell_upper_isoperimetric(area: f64, perimeter: f64, n: usize, beta: f64) -> Bound {
    let nf = dimension(n)?;
    positive("volume", area)?;
    positive("boundary area", perimeter)?;
    positive("beta", beta)?;
    let radius = (area / unit_ball_volume(n)).powf(1.0 / nf);
    Ok((nf * area + beta * (nf - 1.0) * perimeter) / (nf * area * radius))
}

/// Strict lower bound for the first nonzero Steklov eigenvalue,
/// `c eta1 / (2 eta1 + kappa)`.
pub fn steklov_lower_curvature(eta1: f64, kappa: f64, c: f64) -> Bound {
    positive("c", c)?;
    positive("eta1", eta1)?;
    nonnegative("kappa", kappa)?;
    Ok(c * eta1 / (2.0 * eta1 + kappa))
}

/// Strict lower bound for the first nonzero Wentzell eigenvalue under
/// nonnegative Ricci curvature:
/// `(1 + (n-1)c beta + sqrt((n-1)^2 c^2 beta^2 + 2(n-1)c beta)) c / 2`.
pub fn wentzell_lower_curvature(c: f64, beta: f64, n: usize) -> Bound {
    let nf = dimension(n)?;
    positive("c", c)?;
    positive("beta", beta)?;
    let t = (nf - 1.0) * c * beta;
    Ok((1.0 + t + (t * t + 2.0 * t).sqrt()) * c / 2.0)
}

/// Conjectured sharp lower bound `(n-1) beta c^2 + c`.
pub fn wentzell_conjectured_lower(c: f64, beta: f64, n: usize) -> Bound {
    let nf = dimension(n)?;
    positive("c", c)?;
    nonnegative("beta", beta)?;
    Ok((nf - 1.0) * beta * c * c + c)
}

/// Upper bound for the fundamental tone of the fourth-order problem with
/// tension `tau` on a Euclidean domain:
/// `(eta1^2 + tau(eta1 + sqrt(eta1^2 - (n-1) eta1 c^2))) / ((n-1)c) - c eta1`.
pub fn biharmonic_tone_upper(eta1: f64, tau: f64, c: f64, n: usize) -> Bound {
    let nf = dimension(n)?;
    positive("c", c)?;
    positive("eta1", eta1)?;
    positive("tau", tau)?;
    let d = eta1 * (eta1 - (nf - 1.0) * c * c);
    let root = discriminant_sqrt(d, eta1 * eta1)?;
    Ok((eta1 * eta1 + tau * (eta1 + root)) / ((nf - 1.0) * c) - c * eta1)
}

/// Upper bound for the tau-fundamental tone with a Ricci lower bound
/// `-kappa`:
/// `((2 eta1 + kappa)^2 + 2 tau (2 eta1 + kappa + sqrt((2 eta1 + kappa)^2 - 4(n-1) eta1 c^2))) / (4(n-1)c) - c eta1`.
///
/// At `kappa = 0` this coincides with [`biharmonic_tone_upper`].
pub fn tau_tone_upper(eta1: f64, kappa: f64, tau: f64, c: f64, n: usize) -> Bound {
    let nf = dimension(n)?;
    positive("c", c)?;
    positive("eta1", eta1)?;
    nonnegative("tau", tau)?;
    nonnegative("kappa", kappa)?;
    let a = 2.0 * eta1 + kappa;
    let d = curvature_discriminant(eta1, kappa, c, nf);
    let root = discriminant_sqrt(d, a * a)?;
    Ok((a * a + 2.0 * tau * (a + root)) / (4.0 * (nf - 1.0) * c) - c * eta1)
}

/// Isoperimetric upper bound for the first nonzero eigenvalue of the
/// biharmonic Steklov problem with eigenvalue in the third-order condition:
/// `(n+2)|dO| / (n|O| (|O|/omega_n)^(2/n))`.
pub fn xi_upper_isoperimetric(area: f64, perimeter: f64, n: usize) -> Bound {
    let nf = dimension(n)?;
    positive("volume", area)?;
    positive("boundary area", perimeter)?;
    let r2 = (area / unit_ball_volume(n)).powf(2.0 / nf);
    Ok((nf + 2.0) * perimeter / (nf * area * r2))
}

/// [`xi_upper_isoperimetric`] divided by `eta1`; bounds the first nonzero
/// eigenvalue of the problem with eigenvalue on the boundary Laplacian.
pub fn zeta_upper_isoperimetric(area: f64, perimeter: f64, n: usize, eta1: f64) -> Bound {
    positive("eta1", eta1)?;
    Ok(xi_upper_isoperimetric(area, perimeter, n)? / eta1)
}

/// Exact biharmonic eigenvalue `(n+2)/R^3` of the ball of radius `R`.
pub fn xi_ball(n: usize, radius: f64) -> Bound {
    let nf = dimension(n)?;
    positive("R", radius)?;
    Ok((nf + 2.0) / radius.powi(3))
}

/// The lower bound `(n-1)c^2` on `eta1` for a boundary with principal
/// curvatures at least `c` in nonnegative Ricci curvature.
pub fn boundary_gap(c: f64, n: usize) -> Bound {
    let nf = dimension(n)?;
    positive("c", c)?;
    Ok((nf - 1.0) * c * c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn curvature_upper_examples() {
        assert_relative_eq!(wentzell_upper_curvature(1.0, 0.0, 1.0, 1.0, 2).unwrap(), 2.0);
        // eta1 = (n-1)c^2 makes the discriminant vanish
        let (c, beta) = (0.7, 0.3);
        let eta = 2.0 * c * c;
        assert_relative_eq!(wentzell_upper_curvature(eta, 0.0, c, beta, 3).unwrap(), beta * eta + c, epsilon = 1e-12);
        assert_relative_eq!(
            wentzell_upper_curvature(2.0, 1.0, 1.0, 0.5, 2).unwrap(),
            1.0 + (5.0 + 17f64.sqrt()) / 2.0,
            epsilon = 1e-12
        );
        assert!(wentzell_upper_curvature(0.1, 0.0, 1.0, 1.0, 2).is_err());
        assert!(wentzell_upper_curvature(1.0, 0.0, 0.0, 1.0, 2).is_err());
    }

    #[test]
    fn isoperimetric_examples() {
        for beta in [0.5, 1.0, 3.0] {
            assert_relative_eq!(wentzell_upper_isoperimetric(PI, 2.0 * PI, 2, beta).unwrap(), 1.0 + beta, epsilon = 1e-12);
        }
        assert_relative_eq!(wentzell_upper_isoperimetric(4.0 * PI, 4.0 * PI, 2, 1.0).unwrap(), 0.75, epsilon = 1e-12);
        let l = 9.688448220547675;
        assert_relative_eq!(
            wentzell_upper_isoperimetric(2.0 * PI, l, 2, 1.0).unwrap(),
            (4.0 * PI + l) / (4.0 * PI * 2f64.sqrt()),
            epsilon = 1e-12
        );
        // sphere in three dimensions: (3V + 2 beta A) / (3 V R) at R = 1
        let v = 4.0 * PI / 3.0;
        assert_relative_eq!(wentzell_upper_isoperimetric(v, 4.0 * PI, 3, 1.0).unwrap(), 3.0, epsilon = 1e-12);
    }

    #[test]
    fn lower_examples() {
        assert_relative_eq!(steklov_lower_curvature(1.0, 0.0, 1.0).unwrap(), 0.5);
        assert_relative_eq!(wentzell_lower_curvature(1.0, 1.0, 2).unwrap(), (2.0 + 3f64.sqrt()) / 2.0, epsilon = 1e-12);
        assert_relative_eq!(wentzell_lower_curvature(0.8, 1e-12, 2).unwrap(), 0.4, epsilon = 1e-6);
        assert_relative_eq!(wentzell_conjectured_lower(1.0, 1.0, 2).unwrap(), 2.0);
        assert_relative_eq!(wentzell_conjectured_lower(0.6, 0.0, 2).unwrap(), 0.6);
        assert_relative_eq!(wentzell_conjectured_lower(0.5, 2.0, 3).unwrap(), 1.5);
    }

    #[test]
    fn fourth_order_examples() {
        assert_relative_eq!(biharmonic_tone_upper(1.0, 3.0, 1.0, 2).unwrap(), 3.0, epsilon = 1e-12);
        assert_relative_eq!(tau_tone_upper(1.0, 1.0, 0.0, 1.0, 2).unwrap(), 1.25, epsilon = 1e-12);
        // ball values: tau c
        for (n, c, tau) in [(2, 1.0, 3.0), (3, 0.5, 2.0), (5, 2.0, 0.7)] {
            let eta = (n as f64 - 1.0) * c * c;
            assert_relative_eq!(biharmonic_tone_upper(eta, tau, c, n).unwrap(), tau * c, max_relative = 1e-12);
            assert_relative_eq!(tau_tone_upper(eta, 0.0, tau, c, n).unwrap(), tau * c, max_relative = 1e-12);
        }
    }

    #[test]
    fn biharmonic_isoperimetric_examples() {
        assert_relative_eq!(xi_upper_isoperimetric(PI, 2.0 * PI, 2).unwrap(), 4.0, epsilon = 1e-12);
        assert_relative_eq!(xi_upper_isoperimetric(4.0 * PI, 4.0 * PI, 2).unwrap(), 0.5, epsilon = 1e-12);
        assert_relative_eq!(zeta_upper_isoperimetric(PI, 2.0 * PI, 2, 1.0).unwrap(), 4.0, epsilon = 1e-12);
        assert_relative_eq!(xi_ball(2, 2.0).unwrap(), 0.5);
        assert_relative_eq!(boundary_gap(0.25, 2).unwrap(), 0.0625);
    }
}

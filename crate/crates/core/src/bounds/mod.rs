//! Eigenvalue inequalities: closed-form evaluators, Reilly's identity on the
//! unit ball, and verification of the inequalities against computed spectra.

mod evaluators;
mod reilly;
mod report;
mod verify;

pub use evaluators::{
    biharmonic_tone_upper, boundary_gap, steklov_lower_curvature, tau_tone_upper, wentzell_conjectured_lower,
    wentzell_lower_curvature, wentzell_upper_curvature, wentzell_upper_isoperimetric, xi_ball,
    xi_upper_isoperimetric, zeta_upper_isoperimetric, NotApplicable,
};
pub use reilly::{reilly_residual, reilly_sides, ReillyReport};
pub use report::{reports_to_csv, BoundKind, BoundReport, Verdict, DEFAULT_TOLERANCE};
pub use verify::{
    theorem, verify_domain, DomainVerification, ProblemParams, VerifyError, MIN_CURVATURE, SPLITTING_TOLERANCE,
};

/// Report for the boundary eigenvalue gap `eta1 >= (n-1)c^2`.
pub fn boundary_gap_check(eta1: f64, c: f64, n: usize, tol: f64) -> BoundReport {
    BoundReport::compare(theorem::BOUNDARY_GAP, BoundKind::Lower, eta1, boundary_gap(c, n), tol, &[("eta1", eta1), ("c", c)])
}

pub mod ball;
pub mod convergence;
pub mod mesh;
pub mod spectrum;
pub mod sweep;
pub mod verify;

use steklov_core::bounds::VerifyError;
use steklov_core::eigen::EigenError;

use crate::error::CliError;

/// Exit code of a run that completed without an operational failure.
pub type Outcome = Result<u8, CliError>;

pub const EXIT_OK: u8 = 0;
pub const EXIT_VIOLATION: u8 = 4;

pub fn eigen_error(e: EigenError) -> CliError {
    match e {
        EigenError::InvalidParameter(m) => CliError::Config(m),
        other => CliError::Solver(other.to_string()),
    }
}

pub fn verify_error(e: VerifyError) -> CliError {
    match e {
        VerifyError::InvalidParams(m) => CliError::Config(m),
        VerifyError::Eigen(e) => eigen_error(e),
        other => CliError::Solver(other.to_string()),
    }
}

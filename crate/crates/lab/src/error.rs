use std::io;

use threshold_core::Error;

/// Failure of a lab command, grouped by exit code.
#[derive(Debug, thiserror::Error)]
pub enum LabError {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("guard exceeded: {0}")]
    Guard(String),
    #[error("invariant violated: {0}")]
    Violation(String),
}

impl LabError {
    pub fn exit_code(&self) -> i32 {
        match self {
            LabError::Invalid(_) => 2,
            LabError::Guard(_) => 3,
            LabError::Violation(_) => 4,
        }
    }
}

impl From<Error> for LabError {
    fn from(e: Error) -> Self {
        match e {
            Error::GuardExceeded { .. } | Error::Timeout => LabError::Guard(e.to_string()),
            Error::LongCycle { .. } | Error::IdentityViolated { .. } => {
                LabError::Violation(e.to_string())
            }
            _ => LabError::Invalid(e.to_string()),
        }
    }
}

impl From<io::Error> for LabError {
    fn from(e: io::Error) -> Self {
        LabError::Invalid(e.to_string())
    }
}

impl From<serde_json::Error> for LabError {
    fn from(e: serde_json::Error) -> Self {
        LabError::Invalid(e.to_string())
    }
}

pub type LabResult<T> = Result<T, LabError>;

//! Errors of the command-line layer and their exit codes.

use std::fmt;

use stabcat_core::error::{AmbientError, OracleError, OrderError, SheafError, StabilityError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// Malformed input: ambient spec, descriptor, JSON, flags.
    Usage(String),
    Window(String),
    Budget(String),
    Io(String),
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Internal(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Window(_) => 3,
            CliError::Budget(_) => 4,
            CliError::Io(_) => 5,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "error: {m}"),
            CliError::Window(m) => write!(f, "window violation: {m}"),
            CliError::Budget(m) => write!(f, "budget exceeded: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
            CliError::Internal(m) => write!(f, "internal error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::Budget { .. } => CliError::Budget(e.to_string()),
            OracleError::Inconsistent(_) => CliError::Internal(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<SheafError> for CliError {
    fn from(e: SheafError) -> Self {
        match e {
            SheafError::Window(_) => CliError::Window(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<AmbientError> for CliError {
    fn from(e: AmbientError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<OrderError> for CliError {
    fn from(e: OrderError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<StabilityError> for CliError {
    fn from(e: StabilityError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Usage(format!("json: {e}"))
    }
}

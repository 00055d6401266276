//! Workspace loading, command dispatch, reporting, and the verification
//! harness for the exact weight/t-structure calculator.

pub mod commands;
pub mod report;
pub mod verify;
pub mod workspace;

/// CLI-level errors mapped to exit codes: malformed input (1), domain
/// errors (2), verification counterexamples (3), usage (64).
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Malformed(String),
    Domain(String),
    Counterexample(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage: {m}"),
            CliError::Malformed(m) => write!(f, "malformed input: {m}"),
            CliError::Domain(m) => write!(f, "domain error: {m}"),
            CliError::Counterexample(m) => write!(f, "counterexample: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 64,
            CliError::Malformed(_) => 1,
            CliError::Domain(_) => 2,
            CliError::Counterexample(_) => 3,
        }
    }
}

impl From<motivecalc_core::Error> for CliError {
    fn from(e: motivecalc_core::Error) -> Self {
        if e.is_domain() {
            CliError::Domain(e.to_string())
        } else {
            CliError::Malformed(e.to_string())
        }
    }
}

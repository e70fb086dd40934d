//! Library surface of the `lozenge` command-line tool: configuration
//! ingestion, deterministic reports, SVG/CSV rendering, and the persistent
//! enumeration cache. The binary in `main.rs` is a thin dispatcher over
//! these modules.

pub mod cache;
pub mod config;
pub mod render;
pub mod report;

use lozenge::Error;

/// Exit codes: 0 success, 2 semi-decision inconclusive, 3 invariant
/// violation or untrustworthy geometry, 4 input error.
pub const EXIT_OK: i32 = 0;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_VIOLATION: i32 = 3;
pub const EXIT_INPUT: i32 = 4;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation error: {0}")]
    Validation(String),
    #[error("input error: {0}")]
    Input(String),
    #[error("io error: {0}")]
    Io(String),
    #[error(transparent)]
    Lib(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Validation(_) | CliError::Input(_) => EXIT_INPUT,
            CliError::Io(_) => EXIT_INPUT,
            CliError::Lib(e) => match e {
                Error::NotHyperbolic(_)
                | Error::BadWord(_)
                | Error::InvalidMatrix(_)
                | Error::InvalidRange(_)
                | Error::DepthTooLarge { .. } => EXIT_INPUT,
                Error::MixedSignProfile(_) => EXIT_INCONCLUSIVE,
                Error::AmbiguousGeometry(_)
                | Error::DegeneratePair(_)
                | Error::DegeneratePoints(_)
                | Error::InconsistentVerdicts(_) => EXIT_VIOLATION,
            },
        }
    }
}

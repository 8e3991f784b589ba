//! Error type and exit-code policy for the command-line tool.
//!
//! Exit codes:
//!
//! * 0 — success;
//! * 2 — invalid request: bad dimension, out-of-range index, malformed
//!   combination of flags (clap usage errors also exit 2);
//! * 3 — a structurally degenerate construction was requested, such as
//!   the identity word for the entangled families;
//! * 4 — a verification or self-test ran to completion and failed;
//! * 5 — the report could not be written.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] muub_kit::Error),

    #[error("could not write report: {0}")]
    Io(#[from] std::io::Error),

    #[error("{0}")]
    Invalid(String),
}

impl CliError {
    /// Maps the failure onto the documented exit code.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(muub_kit::Error::DegenerateFamily { .. }) => 3,
            CliError::Core(_) => 2,
            CliError::Invalid(_) => 2,
            CliError::Io(_) => 5,
        }
    }
}

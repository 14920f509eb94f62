//! Batch runner for verification scenarios over `nicerec_core`.

use std::fmt;

pub mod certificate;
pub mod exec;
pub mod report;
pub mod runner;
pub mod scenario;
pub mod schema;

/// Malformed or invalid input; maps to exit code 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError {
    pub file: String,
    pub message: String,
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write!(f, "{}: {}", self.file, self.message)
    }
}

impl std::error::Error for InputError {}

//! Exact verification toolkit for the permutation that the cube powers
//! of a generator induce on the ascending cube residues of a prime
//! field, together with the counting identities, Eisenstein symbol
//! machinery, and class number data behind its closed-form sign.
//!
//! Everything is integer arithmetic. The expensive checks are plain
//! quadratic brute force on purpose: they are the oracles the closed
//! forms are audited against.

pub mod binform;
pub mod counts;
pub mod eisenstein;
mod error;
pub mod modular;
pub mod permsign;
pub mod render;
pub mod verify;

pub use error::{Error, Result};

/// Outcome of a single verification check. Range drivers collect these
/// instead of aborting, so one failing prime cannot mask another.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub passed: bool,
    pub detail: Option<String>,
}

impl CheckOutcome {
    pub fn pass() -> Self {
        CheckOutcome {
            passed: true,
            detail: None,
        }
    }

    pub fn fail(detail: impl Into<String>) -> Self {
        CheckOutcome {
            passed: false,
            detail: Some(detail.into()),
        }
    }
}

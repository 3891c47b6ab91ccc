//! Shared report vocabulary for the verification experiments.
//!
//! Every checker returns a typed report that serializes deterministically
//! (exact values as canonical strings, fields in declaration order); the CLI
//! wraps these into its experiment envelope. Timing never enters the
//! serialized payload, so repeated runs are byte-identical.

use serde::Serialize;

/// Outcome of one verification experiment.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl Status {
    pub fn passed(self) -> bool {
        self == Status::Pass
    }

    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Status::Pass => write!(f, "pass"),
            Status::Fail => write!(f, "fail"),
            Status::Inconclusive => write!(f, "inconclusive"),
        }
    }
}

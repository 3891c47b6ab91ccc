//! Classical and quantum Q-systems for type A, realized on symmetric
//! functions of `N = r+1` variables: Kirillov-Reshetikhin character
//! identities, the difference-operator representation of the quantum system,
//! graded characters, the Macdonald `(q,t)` deformation, DIM current
//! exchange relations, and the quantum determinant with its ASM expansion.

pub mod classical;
pub mod dim;
pub mod graded;
pub mod macdonald;
pub mod mop;
pub mod qdet;
pub mod relations;

pub use classical::{a1_conserved_quantity, classical_qsystem_check};
pub use dim::{dim_exchange_check, psi_mode_coefficients};
pub use graded::{graded_character, GradedCharSpec};
pub use macdonald::{macdonald_eigencheck, t_limit_check};
pub use mop::{m_apply, mac_apply, MOperator};
pub use qdet::quantum_determinant;
pub use relations::msystem_relations_check;

use serde::Serialize;
use thiserror::Error;

use crate::mpoly::MPolyError;
use crate::schur::SchurError;

#[derive(Debug, Error, PartialEq, Clone, Serialize)]
pub enum QsysError {
    #[error("operator identity violated: Vandermonde division left a remainder ({0})")]
    OperatorIdentityViolated(String),
    #[error("degenerate orbit: division by a zero trajectory value at step {0}")]
    DegenerateOrbit(usize),
    #[error("grading failure: {0}")]
    GradingFailure(String),
    #[error("eigencheck failed: {0}")]
    EigencheckFailed(String),
    #[error("identity failure: {0}")]
    IdentityFailure(String),
    #[error(transparent)]
    Schur(#[from] SchurError),
    #[error(transparent)]
    MPoly(#[from] MPolyError),
}

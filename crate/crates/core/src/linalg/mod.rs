//! Exact linear algebra over rational scalars: matrices, rank, affine
//! solving, Fourier-Motzkin projection and phase-1 feasibility.

mod fm;
mod gauss;
mod mat;
mod scalar;
mod simplex;

pub use fm::{fm_eliminate, has_contradiction, normalize_inequality, Inequality};
pub use gauss::CMat;
pub use mat::{Mat, SolveError, SolveOutcome};
pub use scalar::Scalar;
pub use simplex::feasible_point;

pub(crate) use mat::{bareiss_solve_i128 as bareiss_solve, int_fits, integerize_row};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("system is inconsistent")]
    Inconsistent,
    #[error("system is underdetermined")]
    Underdetermined,
}

//! Dense complex linear algebra.
//!
//! Everything here is a pure function of its inputs and works for the small
//! dimensions this crate deals with (a handful of users, at most a few dozen
//! rows). All kernels are plain O(n³) loops without blocking.

mod cmatrix;
mod eigen;
mod hermitian;
mod lu;
mod svd;

pub use cmatrix::{matmul, CMatrix};
pub use eigen::{eigenvalues, Spectrum};
pub use hermitian::{
    hermitian_eigen, hermitian_eigenvalues, inv_sqrt_hermitian_pd, HermitianEigen,
};
pub use lu::{logdet2, solve, Lu};
pub use svd::{right_nullspace, singular_values};

use thiserror::Error;

/// Relative residual bound `‖aX − b‖_F / ‖b‖_F` that [`solve`] is expected to meet.
pub const SOLVE_TOLERANCE: f64 = 1e-9;

/// Default relative singular-value cut-off for [`right_nullspace`].
pub const RANK_TOLERANCE: f64 = 1e-10;

/// Pivots smaller than this fraction of `‖a‖_F` are treated as zero.
pub const PIVOT_TOLERANCE: f64 = 1e-12;

/// Relative bound on `‖a − aᴴ‖_F` accepted as Hermitian.
pub const HERMITIAN_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinalgError {
    #[error("{op}: incompatible shapes {left:?} and {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("{rows}x{cols} matrix cannot hold {len} entries")]
    EntryCount {
        rows: usize,
        cols: usize,
        len: usize,
    },
    #[error("row {row} has {found} entries, expected {expected}")]
    RaggedRows {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("matrix is singular to working precision (pivot magnitude {pivot:e})")]
    Singular { pivot: f64 },
    #[error("eigenvalue iteration did not converge within {iterations} iterations")]
    NoConvergence { iterations: usize },
    #[error("matrix is not Hermitian (‖A − Aᴴ‖_F = {asymmetry:e})")]
    NotHermitian { asymmetry: f64 },
    #[error("matrix is not positive definite (minimum eigenvalue {min_eigenvalue:e})")]
    NotPositiveDefinite { min_eigenvalue: f64 },
}

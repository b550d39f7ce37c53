//! Dense complex linear algebra: general (non-Hermitian) eigendecomposition
//! with paired left/right eigenvectors, LU solves with optional ridge
//! regularization, singular values, and defectiveness diagnostics.
//!
//! All operations are pure functions on immutable inputs; nothing here keeps
//! shared mutable state, so concurrent use from many threads is safe.

mod eigen;
mod matrix;
mod solve;
mod svd;

pub use eigen::{eigendecompose, eigenvalues, EigenDecomposition};
pub use matrix::ComplexMatrix;
pub use solve::{invert, solve_linear, LuFactors};
pub use svd::singular_values;

use num_complex::Complex64;
use thiserror::Error;

/// Default relative tolerance used by rank thresholds, eigenvalue
/// clustering, and residual checks when the caller has no better choice.
pub const DEFAULT_TOL: f64 = 1e-8;

#[derive(Debug, Error)]
pub enum LinalgError {
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix contains a non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("matrix is singular (zero pivot at column {col}); pass reg > 0 to regularize")]
    Singular { col: usize },
    #[error("QR iteration failed to converge for eigenvalues {failed:?} after {iterations} iterations")]
    QrNonConvergence {
        failed: Vec<usize>,
        iterations: usize,
    },
    #[error("{value} is not within {tol} of any eigenvalue")]
    NotAnEigenvalue { value: Complex64, tol: f64 },
}

/// Multiplicity report for one eigenvalue of a square matrix.
///
/// An eigenvalue is defective when its geometric multiplicity (dimension of
/// the null space of `A - lambda*I`) is strictly smaller than its algebraic
/// multiplicity (count of eigenvalues in its cluster).
#[derive(Debug, Clone, PartialEq)]
pub struct DefectivenessReport {
    pub eigenvalue: Complex64,
    pub algebraic_multiplicity: usize,
    pub geometric_multiplicity: usize,
    pub is_defective: bool,
}

/// Classifies the multiplicity structure of `lambda` as an eigenvalue of `a`.
///
/// The algebraic multiplicity is the number of computed eigenvalues within
/// `tol` of `lambda` (clustered as a union of tol-balls around it). The
/// geometric multiplicity is `n - rank(a - lambda*I)`, where the rank counts
/// singular values above `tol` times the largest singular value.
///
/// Errors if `lambda` is not within `tol` of any eigenvalue of `a`.
pub fn defectiveness(
    a: &ComplexMatrix,
    lambda: Complex64,
    tol: f64,
) -> Result<DefectivenessReport, LinalgError> {
    let eigs = eigenvalues(a)?;
    // grow the cluster as a union of tol-balls so that split degenerate
    // eigenvalues are still counted together
    let mut cluster: Vec<Complex64> = Vec::new();
    let mut remaining: Vec<Complex64> = eigs.clone();
    let mut frontier = vec![lambda];
    while let Some(z) = frontier.pop() {
        let mut keep = Vec::new();
        for &e in &remaining {
            if (e - z).norm() <= tol {
                cluster.push(e);
                frontier.push(e);
            } else {
                keep.push(e);
            }
        }
        remaining = keep;
    }
    if cluster.is_empty() {
        return Err(LinalgError::NotAnEigenvalue { value: lambda, tol });
    }
    let n = a.rows();
    let mut shifted = a.clone();
    for i in 0..n {
        shifted[(i, i)] -= lambda;
    }
    let sv = singular_values(&shifted);
    let smax = sv.first().copied().unwrap_or(0.0);
    let rank = sv.iter().filter(|&&s| s > tol * smax).count();
    let geometric = n - rank;
    let algebraic = cluster.len();
    Ok(DefectivenessReport {
        eigenvalue: lambda,
        algebraic_multiplicity: algebraic,
        geometric_multiplicity: geometric.max(1).min(algebraic),
        is_defective: geometric < algebraic,
    })
}

//! Exceptional bound (EB) states of truncated biorthogonal band projectors,
//! and their realization as resonances of an LC/INIC circuit Laplacian.
//!
//! The crate is organized around the pipeline
//!
//! 1. [`model`] — a defective (exceptional-point) two-band lattice model,
//!    its occupied-band projector symbol, two-point functions, and the
//!    spatially truncated projector matrix.
//! 2. [`eb`] — classification of EB eigenvalues, spectral flow over the
//!    truncation cut, the projector-defect operator, closed-form estimates,
//!    scaling fits, and the occupation entropy.
//! 3. [`disorder`] — seeded Monte Carlo perturbation of the truncated
//!    projector and ensemble statistics.
//! 4. [`circuit`] — the six-node LC circuit whose Laplacian kernel realizes
//!    the projector eigenproblem, with frequency sweeps, two-point
//!    impedances, and Laplacian reconstruction from node measurements.
//!
//! Everything is backed by [`linalg`], a small dense complex linear algebra
//! layer with left/right eigenvectors and defectiveness diagnostics.

pub mod circuit;
pub mod disorder;
pub mod eb;
pub mod linalg;
pub mod model;

pub use num_complex::Complex64;

//! LU-based linear solves with optional ridge regularization.

use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use super::LinalgError;

/// LU factorization with partial pivoting, reusable across right-hand sides.
pub struct LuFactors {
    lu: ComplexMatrix,
    perm: Vec<usize>,
}

impl LuFactors {
    /// Factors `a + reg*I`. With `reg = 0` an exactly singular matrix is an
    /// error rather than silent garbage.
    pub fn new(a: &ComplexMatrix, reg: f64) -> Result<Self, LinalgError> {
        a.check_square_finite()?;
        let n = a.rows();
        let mut lu = a.clone();
        if reg > 0.0 {
            lu.shift_diagonal(Complex64::new(reg, 0.0));
        }
        // matrices singular to working precision are reported, not solved
        let pivot_floor = f64::EPSILON * lu.max_abs() * n as f64;
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let mut p = k;
            let mut pmax = lu[(k, k)].norm();
            for i in k + 1..n {
                let v = lu[(i, k)].norm();
                if v > pmax {
                    pmax = v;
                    p = i;
                }
            }
            if pmax <= pivot_floor {
                return Err(LinalgError::Singular { col: k });
            }
            if p != k {
                for j in 0..n {
                    let t = lu[(k, j)];
                    lu[(k, j)] = lu[(p, j)];
                    lu[(p, j)] = t;
                }
                perm.swap(k, p);
            }
            let pivot = lu[(k, k)];
            for i in k + 1..n {
                let f = lu[(i, k)] / pivot;
                lu[(i, k)] = f;
                if f.norm_sqr() != 0.0 {
                    for j in k + 1..n {
                        let val = lu[(i, j)] - f * lu[(k, j)];
                        lu[(i, j)] = val;
                    }
                }
            }
        }
        Ok(Self { lu, perm })
    }

    pub fn solve(&self, b: &[Complex64]) -> Vec<Complex64> {
        let n = self.lu.rows();
        assert_eq!(b.len(), n, "rhs length mismatch");
        let mut x: Vec<Complex64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 1..n {
            let mut acc = x[i];
            for j in 0..i {
                acc -= self.lu[(i, j)] * x[j];
            }
            x[i] = acc;
        }
        for i in (0..n).rev() {
            let mut acc = x[i];
            for j in i + 1..n {
                acc -= self.lu[(i, j)] * x[j];
            }
            x[i] = acc / self.lu[(i, i)];
        }
        x
    }
}

/// Solves `(a + reg*I) x = b`.
///
/// `reg > 0` is a Tikhonov-style ridge for near-singular systems (e.g. a
/// circuit Laplacian driven at a resonance); with `reg = 0` the solve is
/// exact and a singular `a` is reported as [`LinalgError::Singular`].
pub fn solve_linear(
    a: &ComplexMatrix,
    b: &[Complex64],
    reg: f64,
) -> Result<Vec<Complex64>, LinalgError> {
    if b.len() != a.rows() {
        return Err(LinalgError::DimensionMismatch(format!(
            "rhs length {} vs matrix dimension {}",
            b.len(),
            a.rows()
        )));
    }
    Ok(LuFactors::new(a, reg)?.solve(b))
}

/// Inverse of `a + reg*I`, assembled column by column.
pub fn invert(a: &ComplexMatrix, reg: f64) -> Result<ComplexMatrix, LinalgError> {
    let n = a.rows();
    let lu = LuFactors::new(a, reg)?;
    let mut inv = ComplexMatrix::zeros(n, n);
    let mut e = vec![Complex64::new(0.0, 0.0); n];
    for j in 0..n {
        e[j] = Complex64::new(1.0, 0.0);
        inv.set_column(j, &lu.solve(&e));
        e[j] = Complex64::new(0.0, 0.0);
    }
    Ok(inv)
}

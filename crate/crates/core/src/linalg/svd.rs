//! Singular values via one-sided Jacobi, used for rank decisions.

use num_complex::Complex64;

use super::matrix::ComplexMatrix;

/// Singular values of a (possibly rectangular) complex matrix, descending.
///
/// One-sided Jacobi on the columns: rotate column pairs until all pairs are
/// mutually orthogonal; the column norms are then the singular values. Plenty
/// for the rank-revealing uses in this crate (n of order a few hundred).
pub fn singular_values(a: &ComplexMatrix) -> Vec<f64> {
    // work on the tall orientation so column count is minimal
    let mut m = if a.rows() >= a.cols() {
        a.clone()
    } else {
        a.adjoint()
    };
    let rows = m.rows();
    let cols = m.cols();
    let eps = f64::EPSILON;

    for _sweep in 0..60 {
        let mut off = 0.0_f64;
        for p in 0..cols {
            for q in p + 1..cols {
                let mut app = 0.0;
                let mut aqq = 0.0;
                let mut apq = Complex64::new(0.0, 0.0);
                for i in 0..rows {
                    let u = m[(i, p)];
                    let v = m[(i, q)];
                    app += u.norm_sqr();
                    aqq += v.norm_sqr();
                    apq += u.conj() * v;
                }
                let denom = (app * aqq).sqrt();
                if denom <= f64::MIN_POSITIVE || apq.norm() <= eps * denom {
                    continue;
                }
                off = off.max(apq.norm() / denom);
                // diagonalize the 2x2 Gram block [[app, apq], [conj(apq), aqq]]
                let phase = apq / apq.norm();
                let tau = (aqq - app) / (2.0 * apq.norm());
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for i in 0..rows {
                    let u = m[(i, p)];
                    let v = m[(i, q)];
                    m[(i, p)] = u * c - v * phase.conj() * s;
                    m[(i, q)] = u * phase * s + v * c;
                }
            }
        }
        if off <= eps * 4.0 {
            break;
        }
    }

    let mut sv: Vec<f64> = (0..cols)
        .map(|j| {
            (0..rows)
                .map(|i| m[(i, j)].norm_sqr())
                .sum::<f64>()
                .sqrt()
        })
        .collect();
    sv.sort_by(|a, b| b.partial_cmp(a).unwrap());
    sv
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_singular_values() {
        let a = ComplexMatrix::from_real_rows(&[&[3.0, 0.0], &[0.0, -2.0]]);
        let sv = singular_values(&a);
        assert!((sv[0] - 3.0).abs() < 1e-12);
        assert!((sv[1] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn rank_one_matrix() {
        let a = ComplexMatrix::from_real_rows(&[&[1.0, 2.0], &[2.0, 4.0]]);
        let sv = singular_values(&a);
        assert!(sv[0] > 4.9 && sv[0] < 5.1);
        assert!(sv[1] < 1e-12);
    }

    #[test]
    fn unitary_invariance_of_frobenius() {
        // singular values must recover the Frobenius norm
        let mut a = ComplexMatrix::zeros(4, 3);
        let mut s = 3u64;
        let mut next = || {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((s >> 33) as f64) / (1u64 << 31) as f64 - 1.0
        };
        for i in 0..4 {
            for j in 0..3 {
                a[(i, j)] = Complex64::new(next(), next());
            }
        }
        let sv = singular_values(&a);
        let fro2: f64 = sv.iter().map(|s| s * s).sum();
        assert!((fro2.sqrt() - a.frobenius_norm()).abs() < 1e-10);
        // and the product of squares equals det(A^dagger A) ~ checked loosely via positivity
        assert!(sv.iter().all(|&s| s >= 0.0));
    }

    #[test]
    fn jordan_block_rank() {
        let a = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
        let sv = singular_values(&a);
        assert!((sv[0] - 1.0).abs() < 1e-12);
        assert!(sv[1] < 1e-14);
    }
}

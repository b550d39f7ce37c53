//! General complex eigendecomposition.
//!
//! Pipeline: diagonal balancing, Householder reduction to upper Hessenberg
//! form, implicit single-shift QR with Wilkinson shifts for the eigenvalues,
//! and inverse iteration on the Hessenberg form for the eigenvectors. Left
//! eigenvectors come from the adjoint problem and are re-paired to the right
//! ones by nearest eigenvalue, then rescaled so that `l^dagger r = 1`
//! whenever the pairing is well conditioned.

use num_complex::Complex64;

use super::matrix::{dot_conj, vec_norm, ComplexMatrix};
use super::LinalgError;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
/// QR sweeps allowed per eigenvalue before giving up.
const MAX_SWEEPS_PER_EIGENVALUE: usize = 60;

/// Eigenvalues with biorthonormally paired right and left eigenvectors.
///
/// Column `mu` of `right_vectors` holds `r_mu` (unit norm) and column `mu`
/// of `left_vectors` holds `l_mu`, satisfying `A r = lambda r` and
/// `A^dagger l = conj(lambda) l`. For non-defective inputs the columns are
/// rescaled so `l_mu^dagger r_nu = delta_{mu nu}`; `biortho_error` is the
/// largest deviation from that identity, and grows large when eigenvectors
/// coalesce (defective or near-defective input). `residual_norms[mu]` is the
/// larger of the right and left residuals for pair `mu`.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<Complex64>,
    pub right_vectors: ComplexMatrix,
    pub left_vectors: ComplexMatrix,
    pub residual_norms: Vec<f64>,
    pub biortho_error: f64,
}

/// Computes only the eigenvalues of a square complex matrix.
pub fn eigenvalues(a: &ComplexMatrix) -> Result<Vec<Complex64>, LinalgError> {
    a.check_square_finite()?;
    let n = a.rows();
    if n == 1 {
        return Ok(vec![a[(0, 0)]]);
    }
    let (balanced, _scale) = balance(a);
    let (mut h, _q) = hessenberg(&balanced, false);
    qr_eigenvalues(&mut h)
}

/// Full eigendecomposition with paired left/right eigenvectors.
///
/// `tol` controls eigenvalue clustering when re-biorthogonalizing degenerate
/// (but non-defective) eigenspaces; residual quality is governed by the data,
/// not by `tol`.
pub fn eigendecompose(a: &ComplexMatrix, tol: f64) -> Result<EigenDecomposition, LinalgError> {
    a.check_square_finite()?;
    let n = a.rows();
    let norm_a = a.frobenius_norm().max(f64::MIN_POSITIVE);

    let right = one_sided(a)?;
    let adj = a.adjoint();
    let left_raw = one_sided(&adj)?;

    // pair the adjoint problem's eigenvalues (conjugates) to the right ones
    let mut lambdas = right.0;
    let rvecs = right.1;
    let mut lvecs = ComplexMatrix::zeros(n, n);
    let mut used = vec![false; n];
    for mu in 0..n {
        let mut best = usize::MAX;
        let mut best_d = f64::INFINITY;
        for nu in 0..n {
            if used[nu] {
                continue;
            }
            let d = (left_raw.0[nu].conj() - lambdas[mu]).norm();
            if d < best_d {
                best_d = d;
                best = nu;
            }
        }
        used[best] = true;
        lvecs.set_column(mu, &left_raw.1.column(best));
    }

    // rescale so l^dagger r = 1 where the pairing is well conditioned; a
    // near-orthogonal left/right pair signals (near-)defectiveness and is
    // left at unit norm so the Gram deviation reports it
    let mut well_paired = vec![true; n];
    for mu in 0..n {
        let r = rvecs.column(mu);
        let l = lvecs.column(mu);
        let overlap = dot_conj(&l, &r);
        if overlap.norm() >= 1e-8 {
            let scaled: Vec<Complex64> = l.iter().map(|z| z / overlap.conj()).collect();
            lvecs.set_column(mu, &scaled);
        } else {
            well_paired[mu] = false;
        }
    }

    // degenerate but diagonalizable clusters: solve the small overlap system
    // so the whole cluster is biorthonormal, not just the diagonal
    rebiorthogonalize_clusters(
        &mut lambdas,
        &rvecs,
        &mut lvecs,
        &well_paired,
        tol.max(1e-14) * norm_a.max(1.0),
    );

    let mut residuals = Vec::with_capacity(n);
    for mu in 0..n {
        let r = rvecs.column(mu);
        let l = lvecs.column(mu);
        let ar = a.matvec(&r);
        let rr: f64 = vec_norm(
            &ar.iter()
                .zip(&r)
                .map(|(x, v)| x - lambdas[mu] * v)
                .collect::<Vec<_>>(),
        );
        let al = adj.matvec(&l);
        let lnorm = vec_norm(&l).max(f64::MIN_POSITIVE);
        let lr: f64 = vec_norm(
            &al.iter()
                .zip(&l)
                .map(|(x, v)| x - lambdas[mu].conj() * v)
                .collect::<Vec<_>>(),
        ) / lnorm;
        residuals.push(rr.max(lr));
    }

    // deviation of the Gram matrix l^dagger r from the identity
    let mut biortho_error: f64 = 0.0;
    for mu in 0..n {
        let l = lvecs.column(mu);
        for nu in 0..n {
            let g = dot_conj(&l, &rvecs.column(nu));
            let target = if mu == nu { ONE } else { ZERO };
            biortho_error = biortho_error.max((g - target).norm());
        }
    }

    Ok(EigenDecomposition {
        eigenvalues: lambdas,
        right_vectors: rvecs,
        left_vectors: lvecs,
        residual_norms: residuals,
        biortho_error,
    })
}

/// Eigenvalues plus right eigenvectors of `a` (unit norm columns).
fn one_sided(a: &ComplexMatrix) -> Result<(Vec<Complex64>, ComplexMatrix), LinalgError> {
    let n = a.rows();
    if n == 1 {
        let mut v = ComplexMatrix::zeros(1, 1);
        v[(0, 0)] = ONE;
        return Ok((vec![a[(0, 0)]], v));
    }
    let (balanced, scale) = balance(a);
    let (h, q) = hessenberg(&balanced, true);
    let q = q.expect("hessenberg was asked for the transform");
    let mut h_iter = h.clone();
    let lambdas = qr_eigenvalues(&mut h_iter)?;

    let mut vecs = ComplexMatrix::zeros(n, n);
    for (mu, &lambda) in lambdas.iter().enumerate() {
        let y = hessenberg_inverse_iteration(&h, lambda, mu);
        // back-transform: eigenvector of A is  D * (Q * y)
        let qy = q.matvec(&y);
        let mut v: Vec<Complex64> = qy.iter().zip(&scale).map(|(z, &s)| z * s).collect();
        let nrm = vec_norm(&v);
        if nrm > 0.0 {
            for z in v.iter_mut() {
                *z /= nrm;
            }
        }
        // fix the overall phase so results are deterministic: largest entry real positive
        let k = v
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.norm().partial_cmp(&b.1.norm()).unwrap())
            .map(|(i, _)| i)
            .unwrap_or(0);
        let ph = v[k];
        if ph.norm() > 0.0 {
            let rot = ph.conj() / ph.norm();
            for z in v.iter_mut() {
                *z *= rot;
            }
        }
        vecs.set_column(mu, &v);
    }
    Ok((lambdas, vecs))
}

/// Parlett-Reinsch balancing by powers of two. Returns the balanced matrix
/// `D^-1 A D` and the diagonal of `D`.
fn balance(a: &ComplexMatrix) -> (ComplexMatrix, Vec<f64>) {
    let n = a.rows();
    let mut m = a.clone();
    let mut scale = vec![1.0_f64; n];
    let radix: f64 = 2.0;
    loop {
        let mut converged = true;
        for i in 0..n {
            let mut r = 0.0;
            let mut c = 0.0;
            for j in 0..n {
                if j != i {
                    c += m[(j, i)].norm();
                    r += m[(i, j)].norm();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let mut f = 1.0;
            let s = c + r;
            let mut c2 = c;
            let mut r2 = r;
            while c2 < r2 / radix {
                c2 *= radix;
                r2 /= radix;
                f *= radix;
            }
            while c2 >= r2 * radix {
                c2 /= radix;
                r2 *= radix;
                f /= radix;
            }
            if (c2 + r2) < 0.95 * s {
                converged = false;
                scale[i] *= f;
                let inv = 1.0 / f;
                for j in 0..n {
                    m[(i, j)] = m[(i, j)] * inv;
                }
                for j in 0..n {
                    m[(j, i)] = m[(j, i)] * f;
                }
            }
        }
        if converged {
            break;
        }
    }
    (m, scale)
}

/// Householder reduction to upper Hessenberg form. Optionally accumulates
/// the unitary transform `Q` with `A = Q H Q^dagger`.
fn hessenberg(a: &ComplexMatrix, want_q: bool) -> (ComplexMatrix, Option<ComplexMatrix>) {
    let n = a.rows();
    let mut h = a.clone();
    let mut q = if want_q {
        Some(ComplexMatrix::identity(n))
    } else {
        None
    };
    if n <= 2 {
        return (h, q);
    }
    for k in 0..n - 2 {
        // reflector zeroing column k below the subdiagonal
        let mut x: Vec<Complex64> = (k + 1..n).map(|i| h[(i, k)]).collect();
        let xnorm = vec_norm(&x);
        if xnorm <= f64::MIN_POSITIVE {
            continue;
        }
        let x0 = x[0];
        let alpha = if x0.norm() > 0.0 {
            -(x0 / x0.norm()) * xnorm
        } else {
            Complex64::new(-xnorm, 0.0)
        };
        x[0] -= alpha;
        let vnorm = vec_norm(&x);
        if vnorm <= f64::MIN_POSITIVE {
            continue;
        }
        let v: Vec<Complex64> = x.iter().map(|z| z / vnorm).collect();

        // H <- P H with P = I - 2 v v^dagger acting on rows k+1..n
        for j in 0..n {
            let mut s = ZERO;
            for (t, vi) in v.iter().enumerate() {
                s += vi.conj() * h[(k + 1 + t, j)];
            }
            s *= 2.0;
            for (t, vi) in v.iter().enumerate() {
                let val = h[(k + 1 + t, j)] - s * vi;
                h[(k + 1 + t, j)] = val;
            }
        }
        // H <- H P on columns k+1..n
        for i in 0..n {
            let mut s = ZERO;
            for (t, vi) in v.iter().enumerate() {
                s += h[(i, k + 1 + t)] * vi;
            }
            s *= 2.0;
            for (t, vi) in v.iter().enumerate() {
                let val = h[(i, k + 1 + t)] - s * vi.conj();
                h[(i, k + 1 + t)] = val;
            }
        }
        if let Some(qm) = q.as_mut() {
            for i in 0..n {
                let mut s = ZERO;
                for (t, vi) in v.iter().enumerate() {
                    s += qm[(i, k + 1 + t)] * vi;
                }
                s *= 2.0;
                for (t, vi) in v.iter().enumerate() {
                    let val = qm[(i, k + 1 + t)] - s * vi.conj();
                    qm[(i, k + 1 + t)] = val;
                }
            }
        }
        // enforce the Hessenberg zero pattern exactly
        h[(k + 1, k)] = alpha;
        for i in k + 2..n {
            h[(i, k)] = ZERO;
        }
    }
    (h, q)
}

/// Wilkinson shift: the eigenvalue of the trailing 2x2 block closest to its
/// bottom-right entry.
fn wilkinson_shift(h: &ComplexMatrix, hi: usize) -> Complex64 {
    let a = h[(hi - 1, hi - 1)];
    let b = h[(hi - 1, hi)];
    let c = h[(hi, hi - 1)];
    let d = h[(hi, hi)];
    let tr = a + d;
    let det = a * d - b * c;
    let disc = (tr * tr - det.scale(4.0)).sqrt();
    let l1 = (tr + disc).scale(0.5);
    let l2 = (tr - disc).scale(0.5);
    if (l1 - d).norm() < (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// Shifted QR iteration on an upper Hessenberg matrix (destroys `h`).
fn qr_eigenvalues(h: &mut ComplexMatrix) -> Result<Vec<Complex64>, LinalgError> {
    let n = h.rows();
    let mut lambdas = vec![ZERO; n];
    let mut hi = n - 1;
    let mut sweeps_left = MAX_SWEEPS_PER_EIGENVALUE * n;
    let mut stagnation = 0usize;

    'outer: loop {
        // deflate converged subdiagonals
        loop {
            let mut deflated = false;
            for i in (1..=hi).rev() {
                let small = f64::EPSILON * (h[(i - 1, i - 1)].norm() + h[(i, i)].norm() + 1e-300);
                if h[(i, i - 1)].norm() <= small {
                    h[(i, i - 1)] = ZERO;
                    if i == hi {
                        lambdas[hi] = h[(hi, hi)];
                        if hi == 0 {
                            break 'outer;
                        }
                        hi -= 1;
                        stagnation = 0;
                        deflated = true;
                        break;
                    }
                }
            }
            if hi == 0 {
                lambdas[0] = h[(0, 0)];
                break 'outer;
            }
            if !deflated {
                break;
            }
        }

        // active block [lo, hi]
        let mut lo = hi;
        while lo > 0 && h[(lo, lo - 1)].norm() > 0.0 {
            lo -= 1;
        }
        if lo == hi {
            lambdas[hi] = h[(hi, hi)];
            if hi == 0 {
                break;
            }
            hi -= 1;
            continue;
        }

        if sweeps_left == 0 {
            return Err(LinalgError::QrNonConvergence {
                failed: (lo..=hi).collect(),
                iterations: MAX_SWEEPS_PER_EIGENVALUE * n,
            });
        }
        sweeps_left -= 1;
        stagnation += 1;

        let shift = if stagnation > 0 && stagnation % 12 == 0 {
            // exceptional shift to break symmetric stalls
            let m = h[(hi, hi - 1)].norm() + if hi >= 2 { h[(hi - 1, hi - 2)].norm() } else { 0.0 };
            h[(hi, hi)] + Complex64::new(0.75 * m, 0.0)
        } else {
            wilkinson_shift(h, hi)
        };

        // implicit single-shift QR sweep on [lo, hi]: chase the bulge with
        // interleaved left/right Givens rotations
        let mut x = h[(lo, lo)] - shift;
        let mut y = h[(lo + 1, lo)];
        for k in lo..hi {
            let (c, s) = givens(x, y);
            // left: rows k, k+1 (column k-1 holds the bulge being annihilated)
            let jstart = k.saturating_sub(1).max(lo);
            for j in jstart..n {
                let hk = h[(k, j)];
                let hk1 = h[(k + 1, j)];
                h[(k, j)] = c * hk + s * hk1;
                h[(k + 1, j)] = -s.conj() * hk + c * hk1;
            }
            if k > lo {
                h[(k + 1, k - 1)] = ZERO;
            }
            // right: columns k, k+1
            let top = (k + 2).min(hi) + 1;
            for i in 0..top {
                let hik = h[(i, k)];
                let hik1 = h[(i, k + 1)];
                h[(i, k)] = hik * c + hik1 * s.conj();
                h[(i, k + 1)] = -hik * s + hik1 * c;
            }
            if k + 1 < hi {
                x = h[(k + 1, k)];
                y = h[(k + 2, k)];
            }
        }
    }
    Ok(lambdas)
}

/// Givens rotation with `c` real: `[c, s; -conj(s), c]^dagger [x; y] = [r; 0]`.
fn givens(x: Complex64, y: Complex64) -> (Complex64, Complex64) {
    let yn = y.norm();
    if yn == 0.0 {
        return (ONE, ZERO);
    }
    let xn = x.norm();
    let r = (xn * xn + yn * yn).sqrt();
    if xn == 0.0 {
        return (ZERO, y.conj() / yn * (yn / r));
    }
    let c = Complex64::new(xn / r, 0.0);
    let s = (x / xn) * y.conj() / r;
    (c, s)
}

/// Inverse iteration for the eigenvector of an upper Hessenberg matrix at a
/// computed eigenvalue. The shift is perturbed by a few ulps so that exactly
/// repeated eigenvalues still give a solvable system, and the starting vector
/// varies with `seed` so members of a degenerate cluster come out different.
fn hessenberg_inverse_iteration(h: &ComplexMatrix, lambda: Complex64, seed: usize) -> Vec<Complex64> {
    let n = h.rows();
    let scale = h.frobenius_norm().max(1.0);
    let eps_shift = Complex64::new(scale * f64::EPSILON * (3 + seed % 7) as f64, 0.0);
    let shifted_lambda = lambda + eps_shift;

    // deterministic pseudo-random start
    let mut state = 0x9E3779B97F4A7C15u64 ^ (seed as u64).wrapping_mul(0xBF58476D1CE4E5B9);
    let mut next = || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
    };
    let mut v: Vec<Complex64> = (0..n).map(|_| Complex64::new(next(), next())).collect();
    let nrm = vec_norm(&v);
    for z in v.iter_mut() {
        *z /= nrm;
    }

    for _ in 0..3 {
        match hessenberg_solve(h, shifted_lambda, &v) {
            Some(mut w) => {
                let nrm = vec_norm(&w);
                if !nrm.is_finite() || nrm == 0.0 {
                    break;
                }
                for z in w.iter_mut() {
                    *z /= nrm;
                }
                // converged well enough once the solve blows the norm up
                let advance = nrm > 1.0 / (f64::EPSILON * 100.0);
                v = w;
                if advance {
                    break;
                }
            }
            None => break,
        }
    }
    v
}

/// Solves `(H - lambda I) x = b` for upper Hessenberg `H` by Gaussian
/// elimination with partial pivoting on the single subdiagonal. Zero pivots
/// are replaced by a tiny value, the standard inverse-iteration safeguard.
fn hessenberg_solve(h: &ComplexMatrix, lambda: Complex64, b: &[Complex64]) -> Option<Vec<Complex64>> {
    let n = h.rows();
    // band copy: row i holds columns i-1..n of (H - lambda I)
    let mut m = h.clone();
    for i in 0..n {
        m[(i, i)] -= lambda;
    }
    let mut x: Vec<Complex64> = b.to_vec();
    let tiny = Complex64::new(h.frobenius_norm().max(1.0) * f64::EPSILON * 1e-2, 0.0);

    for k in 0..n - 1 {
        // pivot between rows k and k+1 (only nonzero below diagonal in Hessenberg)
        if m[(k + 1, k)].norm() > m[(k, k)].norm() {
            for j in k..n {
                let t = m[(k, j)];
                m[(k, j)] = m[(k + 1, j)];
                m[(k + 1, j)] = t;
            }
            x.swap(k, k + 1);
        }
        let mut pivot = m[(k, k)];
        if pivot.norm() <= f64::MIN_POSITIVE {
            pivot = tiny;
            m[(k, k)] = pivot;
        }
        let factor = m[(k + 1, k)] / pivot;
        if factor.norm() != 0.0 {
            for j in k + 1..n {
                let val = m[(k + 1, j)] - factor * m[(k, j)];
                m[(k + 1, j)] = val;
            }
            let xk = x[k];
            x[k + 1] -= factor * xk;
            m[(k + 1, k)] = ZERO;
        }
    }
    if m[(n - 1, n - 1)].norm() <= f64::MIN_POSITIVE {
        m[(n - 1, n - 1)] = tiny;
    }
    // back substitution
    for i in (0..n).rev() {
        let mut acc = x[i];
        for j in i + 1..n {
            acc -= m[(i, j)] * x[j];
        }
        x[i] = acc / m[(i, i)];
        if !x[i].re.is_finite() || !x[i].im.is_finite() {
            return None;
        }
    }
    Some(x)
}

/// For clusters of equal (within `abs_tol`) eigenvalues that are still
/// diagonalizable, replace the left block `L` by `L (M^dagger)^-1` with
/// `M = L^dagger R`, restoring `L^dagger R = I` on the cluster. Skipped when
/// `M` is singular (defective cluster), which then shows up in
/// `biortho_error`.
fn rebiorthogonalize_clusters(
    lambdas: &mut [Complex64],
    rvecs: &ComplexMatrix,
    lvecs: &mut ComplexMatrix,
    well_paired: &[bool],
    abs_tol: f64,
) {
    let n = lambdas.len();
    let mut assigned = vec![false; n];
    for start in 0..n {
        if assigned[start] {
            continue;
        }
        let mut cluster = vec![start];
        assigned[start] = true;
        let mut frontier = vec![start];
        while let Some(i) = frontier.pop() {
            for j in 0..n {
                if !assigned[j] && (lambdas[j] - lambdas[i]).norm() <= abs_tol {
                    assigned[j] = true;
                    cluster.push(j);
                    frontier.push(j);
                }
            }
        }
        let m = cluster.len();
        if m < 2 || cluster.iter().any(|&i| !well_paired[i]) {
            continue;
        }
        // overlap matrix M_{ij} = l_i^dagger r_j on the cluster
        let mut overlap = ComplexMatrix::zeros(m, m);
        for (i, &ci) in cluster.iter().enumerate() {
            let l = lvecs.column(ci);
            for (j, &cj) in cluster.iter().enumerate() {
                overlap[(i, j)] = dot_conj(&l, &rvecs.column(cj));
            }
        }
        let madj = overlap.adjoint();
        let inv = match super::solve::invert(&madj, 0.0) {
            Ok(inv) => inv,
            Err(_) => continue,
        };
        // guard: only apply if the inverse is well scaled
        if inv.max_abs() > 1e12 {
            continue;
        }
        let mut lblock = ComplexMatrix::zeros(lvecs.rows(), m);
        for (j, &cj) in cluster.iter().enumerate() {
            lblock.set_column(j, &lvecs.column(cj));
        }
        let fixed = lblock.matmul(&inv);
        for (j, &cj) in cluster.iter().enumerate() {
            lvecs.set_column(cj, &fixed.column(j));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_eigenvalues_and_zero_residuals() {
        let a = ComplexMatrix::identity(3);
        let d = eigendecompose(&a, 1e-8).unwrap();
        for lam in &d.eigenvalues {
            assert!((lam - ONE).norm() < 1e-14);
        }
        for r in &d.residual_norms {
            assert!(*r < 1e-14);
        }
        assert!(d.biortho_error < 1e-10, "biortho error {}", d.biortho_error);
    }

    #[test]
    fn jordan_block_reports_large_biortho_error() {
        let a = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
        let d = eigendecompose(&a, 1e-8).unwrap();
        let alg = d.eigenvalues.iter().filter(|z| z.norm() < 1e-8).count();
        assert_eq!(alg, 2);
        assert!(
            d.biortho_error > 1e-2,
            "ill-conditioned pairing must be reported, got {}",
            d.biortho_error
        );
    }

    #[test]
    fn diagonal_matrix_exact() {
        let a = ComplexMatrix::from_rows(&[
            &[c(2.0, 1.0), ZERO, ZERO],
            &[ZERO, c(-1.0, 0.0), ZERO],
            &[ZERO, ZERO, c(0.5, -3.0)],
        ]);
        let mut lams = eigenvalues(&a).unwrap();
        lams.sort_by(|p, q| p.re.partial_cmp(&q.re).unwrap());
        assert!((lams[0] - c(-1.0, 0.0)).norm() < 1e-12);
        assert!((lams[1] - c(0.5, -3.0)).norm() < 1e-12);
        assert!((lams[2] - c(2.0, 1.0)).norm() < 1e-12);
    }

    #[test]
    fn residual_bound_on_fixed_dense_matrix() {
        // deterministic non-normal complex 8x8
        let n = 8;
        let mut a = ComplexMatrix::zeros(n, n);
        let mut s = 1u64;
        let mut next = || {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((s >> 33) as f64) / (1u64 << 31) as f64 - 1.0
        };
        for i in 0..n {
            for j in 0..n {
                a[(i, j)] = c(next(), next());
            }
        }
        let d = eigendecompose(&a, 1e-8).unwrap();
        let bound = 1e-8 * a.frobenius_norm();
        for (mu, r) in d.residual_norms.iter().enumerate() {
            assert!(*r <= bound, "pair {mu}: residual {r} > {bound}");
        }
        assert!(d.biortho_error < 1e-6);
    }

    #[test]
    fn non_square_is_rejected() {
        let a = ComplexMatrix::zeros(2, 3);
        assert!(matches!(
            eigenvalues(&a),
            Err(LinalgError::NotSquare { .. })
        ));
    }
}

//! Exceptional-point lattice model: dispersion, momentum grids, the
//! occupied-band projector symbol, two-point functions, and the spatially
//! truncated projector matrix.
//!
//! The model is the two-band family
//!
//! ```text
//! H(k) = [[0, a0 + h(k)], [h(k), 0]],    h(k) = (2(1 - cos k))^B / 2
//! ```
//!
//! which is defective (a 2x2 Jordan block) at k = 0. The occupied band is
//! the negative-energy one; its biorthogonal projector symbol is
//! `P(k) = [[1, -U(k)], [-D(k), 1]] / 2` with `U = sqrt((a0+h)/h) = 1/D`.
//!
//! Momentum grids are half-integer, `k_m = (2m+1) pi / L`, which excludes
//! the defective point k = 0 and reproduces published projector matrices.
//! On this grid every real-space table is antiperiodic: `F(x + L) = -F(x)`.

use num_complex::Complex64;
use thiserror::Error;

use crate::linalg::{self, ComplexMatrix};

/// Tie tolerance for occupied-band selection in the numeric symbol path.
pub const DEFAULT_BAND_TOL: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("a0 must be positive and finite, got {0}")]
    InvalidA0(f64),
    #[error("exceptional-point order parameter B must be >= 1")]
    InvalidB,
    #[error("need at least L = 2 unit cells, got {0}")]
    TooFewCells(usize),
    #[error("H(k) is defective at k = {k} (h(k) = 0); the projector symbol does not exist there")]
    DefectivePoint { k: f64 },
    #[error("band selection ambiguous at k = {k}: |Re(eps)| = {gap} below tolerance")]
    AmbiguousBand { k: f64, gap: f64 },
    #[error("x_cut must lie in [1, {max}], got {got}")]
    CutOutOfRange { got: usize, max: usize },
    #[error("residual imaginary part {0} exceeds the realness budget")]
    ImaginaryResidue(f64),
    #[error(transparent)]
    Linalg(#[from] linalg::LinalgError),
}

/// Band dispersion factor `h(k) = (2(1 - cos k))^B / 2`.
pub fn eval_h(k: f64, b: u32) -> f64 {
    0.5 * (2.0 * (1.0 - k.cos())).powi(b as i32)
}

/// Half-integer momentum grid `k_m = (2m+1) pi / L`, `m = 0..L-1`.
///
/// Excludes k = 0, where the Hamiltonian is defective and U(k) diverges.
pub fn momentum_grid(cells: usize) -> Result<Vec<f64>, ModelError> {
    if cells < 2 {
        return Err(ModelError::TooFewCells(cells));
    }
    Ok((0..cells)
        .map(|m| (2 * m + 1) as f64 * std::f64::consts::PI / cells as f64)
        .collect())
}

/// Two-band exceptional-point lattice model on `cells` unit cells.
#[derive(Debug, Clone)]
pub struct LatticeModel {
    a0: f64,
    b: u32,
    cells: usize,
    grid: Vec<f64>,
}

impl LatticeModel {
    /// `a0` is the constant off-diagonal asymmetry, `b` half the order of
    /// the exceptional point (dispersion ~ k^{2B}), `cells` the number of
    /// unit cells L.
    pub fn new(a0: f64, b: u32, cells: usize) -> Result<Self, ModelError> {
        if !(a0 > 0.0) || !a0.is_finite() {
            return Err(ModelError::InvalidA0(a0));
        }
        if b == 0 {
            return Err(ModelError::InvalidB);
        }
        let grid = momentum_grid(cells)?;
        Ok(Self { a0, b, cells, grid })
    }

    pub fn a0(&self) -> f64 {
        self.a0
    }

    pub fn b(&self) -> u32 {
        self.b
    }

    pub fn cells(&self) -> usize {
        self.cells
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    /// `U(k) = sqrt((a0 + h)/h)`, the divergent off-diagonal symbol factor.
    pub fn u_symbol(&self, k: f64) -> Result<f64, ModelError> {
        let h = eval_h(k, self.b);
        if h <= 0.0 {
            return Err(ModelError::DefectivePoint { k });
        }
        Ok(((self.a0 + h) / h).sqrt())
    }

    /// `D(k) = 1/U(k)`.
    pub fn d_symbol(&self, k: f64) -> Result<f64, ModelError> {
        Ok(1.0 / self.u_symbol(k)?)
    }

    /// Bloch Hamiltonian at momentum `k`.
    pub fn hamiltonian(&self, k: f64) -> ComplexMatrix {
        let h = eval_h(k, self.b);
        ComplexMatrix::from_real_rows(&[&[0.0, self.a0 + h], &[h, 0.0]])
    }

    /// Closed-form occupied-band projector symbol `[[1, -U], [-D, 1]] / 2`.
    ///
    /// Exact projector for every valid k (since UD = 1); errors at the
    /// defective point h(k) = 0.
    pub fn projector_symbol(&self, k: f64) -> Result<ComplexMatrix, ModelError> {
        let u = self.u_symbol(k)?;
        let d = 1.0 / u;
        Ok(ComplexMatrix::from_real_rows(&[
            &[0.5, -0.5 * u],
            &[-0.5 * d, 0.5],
        ]))
    }

    /// Occupied-band projector built numerically from the biorthogonal
    /// eigenpairs of `H(k)`: selects the band with `Re(eps) < 0` and returns
    /// `r l^dagger` with `l^dagger r = 1`.
    ///
    /// Exists as an independent route to [`Self::projector_symbol`]; the two
    /// must agree wherever `H(k)` is non-defective.
    pub fn projector_symbol_numeric(&self, k: f64, tol: f64) -> Result<ComplexMatrix, ModelError> {
        let h = eval_h(k, self.b);
        if h <= 0.0 {
            return Err(ModelError::DefectivePoint { k });
        }
        let ham = self.hamiltonian(k);
        let eig = linalg::eigendecompose(&ham, linalg::DEFAULT_TOL)?;
        let mut occupied = None;
        for (mu, lam) in eig.eigenvalues.iter().enumerate() {
            if lam.re.abs() < tol {
                return Err(ModelError::AmbiguousBand {
                    k,
                    gap: lam.re.abs(),
                });
            }
            if lam.re < 0.0 {
                occupied = Some(mu);
            }
        }
        let mu = occupied.ok_or(ModelError::AmbiguousBand { k, gap: 0.0 })?;
        let r = eig.right_vectors.column(mu);
        let l = eig.left_vectors.column(mu);
        let mut p = ComplexMatrix::zeros(2, 2);
        for i in 0..2 {
            for j in 0..2 {
                p[(i, j)] = r[i] * l[j].conj();
            }
        }
        Ok(p)
    }

    /// Real-space two-point tables `U_x`, `D_x` for `x = 0..L-1`.
    pub fn two_point_functions(&self) -> Result<TwoPointTable, ModelError> {
        let u: Vec<f64> = (0..self.cells)
            .map(|x| self.fourier_coefficient(SymbolKind::U, x as i64))
            .collect::<Result<_, _>>()?;
        let d: Vec<f64> = (0..self.cells)
            .map(|x| self.fourier_coefficient(SymbolKind::D, x as i64))
            .collect::<Result<_, _>>()?;
        Ok(TwoPointTable {
            cells: self.cells,
            u,
            d,
        })
    }

    /// `(1/L) sum_k cos(k x) F(k)` for a symbol factor F.
    ///
    /// The sine parts cancel in pairs under k -> 2pi - k, so summing cosines
    /// keeps the coefficients exactly real instead of leaving cancellation
    /// dust that would trip the realness assertion at large B*L.
    fn fourier_coefficient(&self, kind: SymbolKind, x: i64) -> Result<f64, ModelError> {
        let mut acc = 0.0;
        for &k in &self.grid {
            let f = match kind {
                SymbolKind::One => 1.0,
                SymbolKind::U => self.u_symbol(k)?,
                SymbolKind::D => self.d_symbol(k)?,
            };
            acc += (k * x as f64).cos() * f;
        }
        Ok(acc / self.cells as f64)
    }

    /// Occupied-band projector restricted to cells `1..=x_cut`, a
    /// `2 x_cut` square matrix indexed `(cell, sublattice)` with sublattice
    /// fastest: row `2(x-1)+s` for cell x, sublattice s in {0 = up, 1 = down}.
    ///
    /// Entries are real for this model; they are stored with zero imaginary
    /// part so that disorder semantics stay clean.
    pub fn truncated_projector(&self, x_cut: usize) -> Result<TruncatedProjector, ModelError> {
        if x_cut < 1 || x_cut > self.cells {
            return Err(ModelError::CutOutOfRange {
                got: x_cut,
                max: self.cells,
            });
        }
        // per-displacement block coefficients; displacement range is
        // -(x_cut-1)..=x_cut-1 and the tables are even in x
        let mut ones = vec![0.0; x_cut];
        let mut us = vec![0.0; x_cut];
        let mut ds = vec![0.0; x_cut];
        for dx in 0..x_cut {
            ones[dx] = self.fourier_coefficient(SymbolKind::One, dx as i64)?;
            us[dx] = self.fourier_coefficient(SymbolKind::U, dx as i64)?;
            ds[dx] = self.fourier_coefficient(SymbolKind::D, dx as i64)?;
        }
        let n = 2 * x_cut;
        let mut m = ComplexMatrix::zeros(n, n);
        for xp in 0..x_cut {
            for x in 0..x_cut {
                let dx = xp.abs_diff(x);
                m[(2 * xp, 2 * x)] = Complex64::new(0.5 * ones[dx], 0.0);
                m[(2 * xp + 1, 2 * x + 1)] = Complex64::new(0.5 * ones[dx], 0.0);
                m[(2 * xp, 2 * x + 1)] = Complex64::new(-0.5 * us[dx], 0.0);
                m[(2 * xp + 1, 2 * x)] = Complex64::new(-0.5 * ds[dx], 0.0);
            }
        }
        Ok(TruncatedProjector {
            matrix: m,
            x_cut,
            a0: self.a0,
            b: self.b,
            cells: self.cells,
        })
    }
}

enum SymbolKind {
    One,
    U,
    D,
}

/// Real-space two-point function tables, indexed `x = 0..L-1`.
///
/// On the half-integer grid the tables are antiperiodic, `F(x + L) = -F(x)`,
/// and even in x, `F(-x) = F(x)`; [`TwoPointTable::u_at`] and
/// [`TwoPointTable::d_at`] extend lookups to arbitrary integer displacement
/// with those rules.
#[derive(Debug, Clone)]
pub struct TwoPointTable {
    cells: usize,
    u: Vec<f64>,
    d: Vec<f64>,
}

impl TwoPointTable {
    pub fn cells(&self) -> usize {
        self.cells
    }

    pub fn u(&self) -> &[f64] {
        &self.u
    }

    pub fn d(&self) -> &[f64] {
        &self.d
    }

    pub fn u_at(&self, x: i64) -> f64 {
        signed_lookup(&self.u, self.cells, x)
    }

    pub fn d_at(&self, x: i64) -> f64 {
        signed_lookup(&self.d, self.cells, x)
    }
}

fn signed_lookup(table: &[f64], cells: usize, x: i64) -> f64 {
    let l = cells as i64;
    let r = x.rem_euclid(l);
    let q = (x - r) / l;
    let sign = if q.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    // even symmetry within a period: F(-x) = F(x) means table[r] already
    // covers both signs of the reduced displacement
    sign * table[r as usize]
}

/// The occupied-band projector restricted to a window of unit cells,
/// together with the parameters it came from.
#[derive(Debug, Clone)]
pub struct TruncatedProjector {
    pub matrix: ComplexMatrix,
    pub x_cut: usize,
    pub a0: f64,
    pub b: u32,
    pub cells: usize,
}

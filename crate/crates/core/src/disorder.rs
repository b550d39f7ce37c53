//! Seeded Monte Carlo hopping disorder on truncated projectors and ensemble
//! statistics of the resulting occupation spectra.
//!
//! Each off-diagonal entry is multiplied by an independent random factor
//! `1 + r_R + i r_I`, `r` uniform on `[-delta, delta]`. The random stream is
//! counted per `(base_seed, instance, row, col)`, so any instance — and any
//! single entry — is reproducible in isolation and results do not depend on
//! evaluation order.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::eb::{self, EbError};
use crate::linalg::{self, ComplexMatrix};
use crate::model::{LatticeModel, ModelError, TruncatedProjector};

#[derive(Debug, Error)]
pub enum DisorderError {
    #[error("fractional half-width delta must lie in [0, 1], got {0}")]
    InvalidDelta(f64),
    #[error("ensemble needs at least one instance")]
    NoInstances,
    #[error("clean spectrum has no exceptional-bound eigenvalues to track")]
    NoCleanEbValues,
    #[error("all {0} instances failed to eigendecompose")]
    AllInstancesFailed(usize),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Eb(#[from] EbError),
    #[error(transparent)]
    Linalg(#[from] linalg::LinalgError),
}

/// Which part of the random multiplier is drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DisorderMode {
    Real,
    Imaginary,
    Complex,
}

/// Disorder ensemble parameters.
#[derive(Debug, Clone)]
pub struct DisorderConfig {
    /// Fractional half-width of the uniform multiplier, in [0, 1].
    pub delta: f64,
    pub mode: DisorderMode,
    pub instances: usize,
    pub base_seed: u64,
    /// Hoppings are the off-diagonal entries; the diagonal is only touched
    /// when this is set.
    pub perturb_diagonal: bool,
}

impl DisorderConfig {
    pub fn new(delta: f64, mode: DisorderMode, instances: usize, base_seed: u64) -> Self {
        Self {
            delta,
            mode,
            instances,
            base_seed,
            perturb_diagonal: false,
        }
    }

    fn validate(&self) -> Result<(), DisorderError> {
        if !(0.0..=1.0).contains(&self.delta) {
            return Err(DisorderError::InvalidDelta(self.delta));
        }
        if self.instances == 0 {
            return Err(DisorderError::NoInstances);
        }
        Ok(())
    }
}

/// ChaCha stream keyed by (seed, instance, entry), independent of draw order.
fn entry_rng(base_seed: u64, instance: u64, row: u64, col: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[0..8].copy_from_slice(&base_seed.to_le_bytes());
    key[8..16].copy_from_slice(&instance.to_le_bytes());
    key[16..24].copy_from_slice(&row.to_le_bytes());
    key[24..32].copy_from_slice(&col.to_le_bytes());
    ChaCha8Rng::from_seed(key)
}

/// Multiplies each hopping of `p` by an independent `1 + r_R + i r_I`.
pub fn perturb(
    p: &TruncatedProjector,
    cfg: &DisorderConfig,
    instance_index: usize,
) -> Result<ComplexMatrix, DisorderError> {
    cfg.validate()?;
    let mut m = p.matrix.clone();
    let n = m.rows();
    for i in 0..n {
        for j in 0..n {
            if i == j && !cfg.perturb_diagonal {
                continue;
            }
            let mut rng = entry_rng(cfg.base_seed, instance_index as u64, i as u64, j as u64);
            let r_re = match cfg.mode {
                DisorderMode::Real | DisorderMode::Complex => {
                    rng.gen_range(-cfg.delta..=cfg.delta)
                }
                DisorderMode::Imaginary => 0.0,
            };
            let r_im = match cfg.mode {
                DisorderMode::Imaginary | DisorderMode::Complex => {
                    rng.gen_range(-cfg.delta..=cfg.delta)
                }
                DisorderMode::Real => 0.0,
            };
            m[(i, j)] *= Complex64::new(1.0 + r_re, r_im);
        }
    }
    Ok(m)
}

/// Aggregate statistics of a disorder ensemble.
///
/// EB cluster membership is tracked by descent: in every instance, the
/// eigenvalue nearest to each clean EB value is its perturbed descendant.
/// The remaining (non-EB) eigenvalues form clouds around 0 and 1, assigned
/// by whichever is nearer.
#[derive(Debug, Clone)]
pub struct EnsembleResult {
    /// One spectrum per instance that eigendecomposed successfully.
    pub spectra: Vec<Vec<Complex64>>,
    /// Clean EB values being tracked.
    pub clean_eb_values: Vec<Complex64>,
    /// Centroid of each tracked EB cluster, same order as `clean_eb_values`.
    pub eb_cluster_centroids: Vec<Complex64>,
    /// Worst-cluster RMS deviation from the clean EB value, relative to its
    /// magnitude.
    pub eb_fractional_spread: f64,
    /// Smallest distance between any EB descendant and any non-EB eigenvalue
    /// across the whole ensemble.
    pub min_cluster_gap: f64,
    /// 0.9-quantile radius of the non-EB cloud around 0 and around 1; the
    /// clouds are distinguishable while the radii sum to less than their
    /// unit separation.
    pub non_eb_cloud_radii: (f64, f64),
    /// Instances whose eigendecomposition failed, excluded from statistics.
    pub failed_instances: usize,
}

impl EnsembleResult {
    /// Bulk 0/1 clouds overlap once their 0.9-quantile radii span the gap.
    pub fn non_eb_clouds_merged(&self) -> bool {
        self.non_eb_cloud_radii.0 + self.non_eb_cloud_radii.1 >= 1.0
    }
}

/// Runs the disorder ensemble on the truncated projector of `model` at
/// `x_cut` and aggregates spectra and cluster statistics.
pub fn run_ensemble(
    model: &LatticeModel,
    x_cut: usize,
    cfg: &DisorderConfig,
) -> Result<EnsembleResult, DisorderError> {
    cfg.validate()?;
    let p = model.truncated_projector(x_cut)?;
    let clean = linalg::eigenvalues(&p.matrix)?;
    let clean_eb = eb::classify(&clean, eb::DEFAULT_EB_THRESHOLD)?.eb_values;
    if clean_eb.is_empty() {
        return Err(DisorderError::NoCleanEbValues);
    }

    let mut spectra = Vec::with_capacity(cfg.instances);
    let mut failed = 0usize;
    let mut eb_descendants: Vec<Vec<Complex64>> = vec![Vec::new(); clean_eb.len()];
    let mut non_eb: Vec<Complex64> = Vec::new();
    let mut min_gap = f64::INFINITY;

    for instance in 0..cfg.instances {
        let m = perturb(&p, cfg, instance)?;
        let eigs = match linalg::eigenvalues(&m) {
            Ok(e) => e,
            Err(_) => {
                failed += 1;
                continue;
            }
        };
        let mut used = vec![false; eigs.len()];
        let mut inst_eb = Vec::with_capacity(clean_eb.len());
        for (c_idx, &c) in clean_eb.iter().enumerate() {
            let mut best = usize::MAX;
            let mut best_d = f64::INFINITY;
            for (i, &z) in eigs.iter().enumerate() {
                if !used[i] && (z - c).norm() < best_d {
                    best_d = (z - c).norm();
                    best = i;
                }
            }
            used[best] = true;
            inst_eb.push(eigs[best]);
            eb_descendants[c_idx].push(eigs[best]);
        }
        for (i, &z) in eigs.iter().enumerate() {
            if !used[i] {
                for &e in &inst_eb {
                    min_gap = min_gap.min((e - z).norm());
                }
                non_eb.push(z);
            }
        }
        spectra.push(eigs);
    }
    if spectra.is_empty() {
        return Err(DisorderError::AllInstancesFailed(cfg.instances));
    }

    let mut centroids = Vec::with_capacity(clean_eb.len());
    let mut spread: f64 = 0.0;
    for (c_idx, &c) in clean_eb.iter().enumerate() {
        let pts = &eb_descendants[c_idx];
        let centroid = pts.iter().sum::<Complex64>() / pts.len() as f64;
        centroids.push(centroid);
        let rms = (pts.iter().map(|z| (z - c).norm_sqr()).sum::<f64>() / pts.len() as f64).sqrt();
        spread = spread.max(rms / c.norm());
    }

    let one = Complex64::new(1.0, 0.0);
    let mut d0: Vec<f64> = Vec::new();
    let mut d1: Vec<f64> = Vec::new();
    for &z in &non_eb {
        if z.norm() <= (z - one).norm() {
            d0.push(z.norm());
        } else {
            d1.push((z - one).norm());
        }
    }
    let radii = (quantile(&mut d0, 0.9), quantile(&mut d1, 0.9));

    Ok(EnsembleResult {
        spectra,
        clean_eb_values: clean_eb,
        eb_cluster_centroids: centroids,
        eb_fractional_spread: spread,
        min_cluster_gap: min_gap,
        non_eb_cloud_radii: radii,
        failed_instances: failed,
    })
}

fn quantile(values: &mut Vec<f64>, q: f64) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    values.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let idx = ((values.len() - 1) as f64 * q).round() as usize;
    values[idx]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn projector() -> TruncatedProjector {
        LatticeModel::new(14.0, 7, 4)
            .unwrap()
            .truncated_projector(3)
            .unwrap()
    }

    #[test]
    fn zero_delta_is_identity() {
        let p = projector();
        let cfg = DisorderConfig::new(0.0, DisorderMode::Complex, 1, 42);
        let m = perturb(&p, &cfg, 0).unwrap();
        assert_eq!(m, p.matrix);
    }

    #[test]
    fn real_mode_preserves_realness() {
        let p = projector();
        let cfg = DisorderConfig::new(0.05, DisorderMode::Real, 1, 42);
        let m = perturb(&p, &cfg, 0).unwrap();
        assert_eq!(m.max_abs_imag(), 0.0);
    }

    #[test]
    fn same_seed_and_index_is_bit_identical() {
        let p = projector();
        let cfg = DisorderConfig::new(0.05, DisorderMode::Complex, 4, 9);
        let a = perturb(&p, &cfg, 2).unwrap();
        let b = perturb(&p, &cfg, 2).unwrap();
        assert_eq!(a, b);
        let c = perturb(&p, &cfg, 3).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn diagonal_untouched_by_default() {
        let p = projector();
        let cfg = DisorderConfig::new(0.5, DisorderMode::Complex, 1, 11);
        let m = perturb(&p, &cfg, 0).unwrap();
        for i in 0..m.rows() {
            assert_eq!(m[(i, i)], p.matrix[(i, i)]);
        }
        let cfg = DisorderConfig {
            perturb_diagonal: true,
            ..cfg
        };
        let m = perturb(&p, &cfg, 0).unwrap();
        assert_ne!(m[(0, 0)], p.matrix[(0, 0)]);
    }

    #[test]
    fn invalid_config_is_rejected() {
        let p = projector();
        let cfg = DisorderConfig::new(1.5, DisorderMode::Real, 1, 0);
        assert!(matches!(
            perturb(&p, &cfg, 0),
            Err(DisorderError::InvalidDelta(_))
        ));
        let cfg = DisorderConfig::new(0.1, DisorderMode::Real, 0, 0);
        assert!(matches!(
            run_ensemble(&LatticeModel::new(1.0, 2, 8).unwrap(), 7, &cfg),
            Err(DisorderError::NoInstances)
        ));
    }

    #[test]
    fn zero_delta_ensemble_has_zero_spread() {
        let model = LatticeModel::new(1.0, 2, 12).unwrap();
        let cfg = DisorderConfig::new(0.0, DisorderMode::Complex, 3, 5);
        let r = run_ensemble(&model, 11, &cfg).unwrap();
        assert!(r.eb_fractional_spread < 1e-12);
        assert_eq!(r.failed_instances, 0);
        assert_eq!(r.spectra.len(), 3);
    }

    #[test]
    fn ensemble_is_deterministic() {
        let model = LatticeModel::new(1.0, 2, 10).unwrap();
        let cfg = DisorderConfig::new(0.02, DisorderMode::Complex, 4, 123);
        let a = run_ensemble(&model, 9, &cfg).unwrap();
        let b = run_ensemble(&model, 9, &cfg).unwrap();
        assert_eq!(a.spectra, b.spectra);
        assert_eq!(a.eb_fractional_spread, b.eb_fractional_spread);
        assert_eq!(a.min_cluster_gap, b.min_cluster_gap);
    }

    #[test]
    fn real_mode_spectra_close_under_conjugation() {
        let model = LatticeModel::new(1.0, 2, 12).unwrap();
        let cfg = DisorderConfig::new(0.05, DisorderMode::Real, 3, 77);
        let r = run_ensemble(&model, 11, &cfg).unwrap();
        for spec in &r.spectra {
            for &z in spec {
                let nearest = spec
                    .iter()
                    .map(|w| (w - z.conj()).norm())
                    .fold(f64::INFINITY, f64::min);
                assert!(nearest < 1e-7, "conjugate of {z} missing ({nearest})");
            }
        }
    }
}

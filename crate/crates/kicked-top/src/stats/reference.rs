//! Reference ensembles and constants: Poisson levels, GOE/GUE matrices,
//! their r̃ averages, NNS densities, and Δ₃ curves.
//!
//! The quoted ratio constants are the 3×3-ensemble (surmise) values
//! 2ln2−1, 4−2√3 and 2√3/π − ½; pooling dim-3 matrices reproduces them
//! exactly, while large matrices converge to the slightly lower bulk
//! values (≈ 0.5307 for GOE, ≈ 0.5996 for GUE).

use ndarray::prelude::*;
use ndarray_linalg::{Eigh, UPLO};
use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::noise::sample_goe;

use super::{RatioStatistic, SpacingEnsemble, SpacingSet};

/// Poisson mean ratio, 2 ln 2 − 1.
pub const POISSON_R: f64 = 0.386_294_361_119_890_6;
/// GOE surmise mean ratio, 4 − 2√3.
pub const GOE_R: f64 = 0.535_898_384_862_245_4;
/// GUE surmise mean ratio, 2√3/π − ½.
pub const GUE_R: f64 = 0.602_657_790_843_584_1;

/// Poisson NNS density e^(−s).
pub fn poisson_nns_density(s: f64) -> f64 {
    (-s).exp()
}

/// Wigner surmise for GOE, (π/2) s e^(−πs²/4).
pub fn wigner_goe_density(s: f64) -> f64 {
    std::f64::consts::FRAC_PI_2 * s * (-std::f64::consts::PI * s * s / 4.0).exp()
}

/// Wigner surmise for GUE, (32/π²) s² e^(−4s²/π).
pub fn wigner_gue_density(s: f64) -> f64 {
    let pi = std::f64::consts::PI;
    32.0 / (pi * pi) * s * s * (-4.0 * s * s / pi).exp()
}

/// Which reference ensemble to draw from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReferenceKind {
    Poisson,
    Goe,
    Gue,
}

impl ReferenceKind {
    pub fn label(self) -> &'static str {
        match self {
            ReferenceKind::Poisson => "poisson",
            ReferenceKind::Goe => "goe",
            ReferenceKind::Gue => "gue",
        }
    }
}

/// An unfolded reference spectrum with unit mean spacing.
#[derive(Clone, Debug)]
pub struct ReferenceSpectrum {
    pub kind: ReferenceKind,
    pub levels: Vec<f64>,
}

/// Hermitian GUE sample H = (M + M†)/2 with M entries
/// (N(0,1) + i N(0,1))/√2; deterministic per seed.
pub fn sample_gue(dim: usize, seed: u64) -> Array2<C64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let inv = 1.0 / 2f64.sqrt();
    let mut m = Array2::<C64>::zeros((dim, dim));
    for i in 0..dim {
        for k in 0..dim {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            m[[i, k]] = C64::new(re * inv, im * inv);
        }
    }
    let adj = crate::linalg::adjoint(&m);
    (&m + &adj) / 2.0
}

fn goe_eigenvalues(dim: usize, seed: u64) -> Result<Vec<f64>> {
    let (vals, _) = sample_goe(dim, seed).eigh(UPLO::Lower)?;
    let mut v = vals.to_vec();
    v.sort_by(f64::total_cmp);
    Ok(v)
}

fn gue_eigenvalues(dim: usize, seed: u64) -> Result<Vec<f64>> {
    let (vals, _) = sample_gue(dim, seed).eigh(UPLO::Lower)?;
    let mut v = vals.to_vec();
    v.sort_by(f64::total_cmp);
    Ok(v)
}

/// Rank-based unfolding against a pooled calibration sample: each level
/// maps to (number of calibration levels below it) / (number of
/// calibration matrices), which removes the semicircle density exactly in
/// the large-calibration limit.
fn unfold_by_calibration(levels: &[f64], calibration: &[f64], n_matrices: usize) -> Vec<f64> {
    levels
        .iter()
        .map(|&x| {
            let rank = calibration.partition_point(|&c| c <= x);
            rank as f64 / n_matrices as f64
        })
        .collect()
}

/// One unfolded spectrum: sorted iid uniform levels for Poisson, or
/// matrix eigenvalues unfolded by the empirical CDF of a calibration
/// ensemble for GOE/GUE. Deterministic per (kind, dim, seed).
pub fn sample_reference_ensemble(
    kind: ReferenceKind,
    dim: usize,
    seed: u64,
) -> Result<ReferenceSpectrum> {
    if dim < 2 {
        return Err(Error::InvalidInput("reference spectrum needs dim ≥ 2".into()));
    }
    let mut master = ChaCha8Rng::seed_from_u64(seed);
    let levels = match kind {
        ReferenceKind::Poisson => {
            let mut v: Vec<f64> = (0..dim).map(|_| master.random_range(0.0..dim as f64)).collect();
            v.sort_by(f64::total_cmp);
            v
        }
        ReferenceKind::Goe | ReferenceKind::Gue => {
            let draw = |s: u64| -> Result<Vec<f64>> {
                match kind {
                    ReferenceKind::Goe => goe_eigenvalues(dim, s),
                    _ => gue_eigenvalues(dim, s),
                }
            };
            let sample = draw(master.random())?;
            let n_cal = (20_000 / dim).clamp(4, 64);
            let mut calibration = Vec::with_capacity(n_cal * dim);
            for _ in 0..n_cal {
                calibration.extend(draw(master.random())?);
            }
            calibration.sort_by(f64::total_cmp);
            unfold_by_calibration(&sample, &calibration, n_cal)
        }
    };
    Ok(ReferenceSpectrum { kind, levels })
}

/// Pooled r̃ over iid uniform level sets totalling at least `n_spacings`.
pub fn poisson_reference_r(n_spacings: usize, seed: u64) -> Result<RatioStatistic> {
    let per_set = 1000usize;
    let sets = n_spacings.div_ceil(per_set.saturating_sub(1)).max(1);
    let mut master = ChaCha8Rng::seed_from_u64(seed);
    let mut ens = SpacingEnsemble::new();
    for i in 0..sets {
        let mut v: Vec<f64> = (0..per_set).map(|_| master.random_range(0.0..per_set as f64)).collect();
        v.sort_by(f64::total_cmp);
        ens.push(SpacingSet::from_levels(&v, format!("poisson#{i}"))?);
    }
    ens.r_statistic()
}

/// Pooled r̃ over `n_matrices` GOE samples of size `dim`, computed from
/// raw eigenvalue spacings (the statistic needs no unfolding). At dim 3
/// the mean is exactly [`GOE_R`]; large dims converge to ≈ 0.5307.
pub fn goe_reference_r(n_matrices: usize, dim: usize, seed: u64) -> Result<RatioStatistic> {
    let mut master = ChaCha8Rng::seed_from_u64(seed);
    let mut ens = SpacingEnsemble::new();
    for i in 0..n_matrices {
        let v = goe_eigenvalues(dim, master.random())?;
        ens.push(SpacingSet::from_levels(&v, format!("goe#{i}"))?);
    }
    ens.r_statistic()
}

/// GUE version of [`goe_reference_r`]; dim 3 gives exactly [`GUE_R`].
pub fn gue_reference_r(n_matrices: usize, dim: usize, seed: u64) -> Result<RatioStatistic> {
    let mut master = ChaCha8Rng::seed_from_u64(seed);
    let mut ens = SpacingEnsemble::new();
    for i in 0..n_matrices {
        let v = gue_eigenvalues(dim, master.random())?;
        ens.push(SpacingSet::from_levels(&v, format!("gue#{i}"))?);
    }
    ens.r_statistic()
}

/// A batch of unfolded reference spectra sharing one calibration pool
/// (sampling many spectra through [`sample_reference_ensemble`] would
/// re-draw the calibration ensemble every time).
pub fn reference_sequences(
    kind: ReferenceKind,
    dim: usize,
    n_sets: usize,
    seed: u64,
) -> Result<Vec<Vec<f64>>> {
    if dim < 2 {
        return Err(Error::InvalidInput("reference spectrum needs dim ≥ 2".into()));
    }
    let mut master = ChaCha8Rng::seed_from_u64(seed);
    match kind {
        ReferenceKind::Poisson => Ok((0..n_sets)
            .map(|_| {
                let mut v: Vec<f64> =
                    (0..dim).map(|_| master.random_range(0.0..dim as f64)).collect();
                v.sort_by(f64::total_cmp);
                v
            })
            .collect()),
        ReferenceKind::Goe | ReferenceKind::Gue => {
            let draw = |s: u64| -> Result<Vec<f64>> {
                match kind {
                    ReferenceKind::Goe => goe_eigenvalues(dim, s),
                    _ => gue_eigenvalues(dim, s),
                }
            };
            let samples: Vec<Vec<f64>> = (0..n_sets)
                .map(|_| draw(master.random()))
                .collect::<Result<_>>()?;
            let n_cal = (20_000 / dim).clamp(4, 64);
            let mut calibration = Vec::with_capacity(n_cal * dim);
            for _ in 0..n_cal {
                calibration.extend(draw(master.random())?);
            }
            calibration.sort_by(f64::total_cmp);
            Ok(samples
                .iter()
                .map(|s| unfold_by_calibration(s, &calibration, n_cal))
                .collect())
        }
    }
}

/// Monte-Carlo Δ₃ curve for a reference ensemble, pooled over `n_sets`
/// unfolded spectra of size `dim`.
pub fn delta3_reference_curve(
    kind: ReferenceKind,
    dim: usize,
    n_sets: usize,
    seed: u64,
    l_grid: &[f64],
) -> Result<Vec<(f64, f64)>> {
    let sequences = reference_sequences(kind, dim, n_sets, seed)?;
    super::rigidity::delta3_pooled(&sequences, l_grid)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants_match_their_closed_forms() {
        assert!((POISSON_R - (2.0 * std::f64::consts::LN_2 - 1.0)).abs() < 1e-15);
        assert!((GOE_R - (4.0 - 2.0 * 3f64.sqrt())).abs() < 1e-15);
        assert!((GUE_R - (2.0 * 3f64.sqrt() / std::f64::consts::PI - 0.5)).abs() < 1e-15);
    }

    #[test]
    fn poisson_reference_is_deterministic() {
        let a = sample_reference_ensemble(ReferenceKind::Poisson, 2, 99).unwrap();
        let b = sample_reference_ensemble(ReferenceKind::Poisson, 2, 99).unwrap();
        assert_eq!(a.levels, b.levels);
        let c = sample_reference_ensemble(ReferenceKind::Poisson, 2, 100).unwrap();
        assert_ne!(a.levels, c.levels);
    }

    #[test]
    fn surmise_dim3_goe_hits_its_constant() {
        let r = goe_reference_r(12_000, 3, 5).unwrap();
        assert!(
            (r.mean - GOE_R).abs() < 4.0 * r.stderr + 0.002,
            "r = {} ± {} vs {GOE_R}",
            r.mean,
            r.stderr
        );
    }

    #[test]
    fn surmise_dim3_gue_hits_its_constant() {
        let r = gue_reference_r(12_000, 3, 6).unwrap();
        assert!(
            (r.mean - GUE_R).abs() < 4.0 * r.stderr + 0.002,
            "r = {} ± {} vs {GUE_R}",
            r.mean,
            r.stderr
        );
    }

    #[test]
    fn poisson_r_short_run() {
        let r = poisson_reference_r(30_000, 7).unwrap();
        assert!((r.mean - POISSON_R).abs() < 0.005, "r = {}", r.mean);
    }

    #[test]
    fn unfolded_goe_has_unit_mean_spacing() {
        let spec = sample_reference_ensemble(ReferenceKind::Goe, 400, 11).unwrap();
        let span = spec.levels.last().unwrap() - spec.levels.first().unwrap();
        let mean = span / (spec.levels.len() - 1) as f64;
        assert!((mean - 1.0).abs() < 0.05, "mean spacing {mean}");
    }

    #[test]
    fn goe_histogram_matches_wigner_surmise() {
        // dim-2 ensemble: the surmise is the exact spacing density
        let mut master = ChaCha8Rng::seed_from_u64(31);
        let mut raw = Vec::with_capacity(20_000);
        for _ in 0..20_000 {
            let v = goe_eigenvalues(2, master.random()).unwrap();
            raw.push(v[1] - v[0]);
        }
        let mut ens = SpacingEnsemble::new();
        ens.push(SpacingSet::from_raw_spacings(raw, "goe2"));
        ens.normalize_globally();
        let h = ens.histogram(50, 0.0, 4.0).unwrap();
        let width = h.edges[1] - h.edges[0];
        let n = h.in_range as f64;
        for (center, density) in h.bin_centers().iter().zip(&h.densities) {
            let expect = wigner_goe_density(*center);
            let p = expect * width;
            let sigma = (p * (1.0 - p) / n).sqrt() / width;
            assert!(
                (density - expect).abs() < 3.5 * sigma + 0.01,
                "s = {center}: {density} vs {expect}"
            );
        }
    }

    #[test]
    fn reference_rigidity_separates_goe_from_poisson() {
        let grid = [15.0];
        let poisson = delta3_reference_curve(ReferenceKind::Poisson, 400, 8, 3, &grid).unwrap();
        let goe = delta3_reference_curve(ReferenceKind::Goe, 400, 8, 4, &grid).unwrap();
        assert!(
            goe[0].1 < poisson[0].1 / 2.0,
            "GOE Δ₃(15) = {} vs Poisson {}",
            goe[0].1,
            poisson[0].1
        );
    }
}

//! Spectral statistics: unfolded spacing ensembles, the r̃ ratio
//! statistic, nearest-neighbour spacing histograms, Δ₃ rigidity, and
//! reference ensembles.
//!
//! Floquet spectra live on a circle, so spacings are computed circularly
//! (including the wrap-around gap); synthetic line spectra omit the wrap
//! term. Each eigenphase set is unfolded by its own mean spacing, and
//! pooled statistics never pair spacings across two different sets.

mod reference;
mod rigidity;

pub use reference::{
    delta3_reference_curve, goe_reference_r, gue_reference_r, poisson_nns_density,
    poisson_reference_r, reference_sequences, sample_gue, sample_reference_ensemble,
    wigner_goe_density, wigner_gue_density, ReferenceKind, ReferenceSpectrum, GOE_R, GUE_R,
    POISSON_R,
};
pub use rigidity::{delta3, delta3_pooled, delta3_window_values, unfolded_levels_circular};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::floquet::EigenphaseSet;

/// Spacings below this multiple of the mean are treated as degeneracies:
/// excluded from ratio pairs and counted in the report.
pub const DEGENERACY_THRESHOLD: f64 = 1e-12;

/// The spacings of one spectrum, mean-normalized, remembering whether the
/// underlying spectrum was circular.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpacingSet {
    pub spacings: Vec<f64>,
    pub circular: bool,
    pub source: String,
}

impl SpacingSet {
    /// Circular spacings of sorted phases on (−π, π], wrap-around gap
    /// included (n spacings from n phases), normalized to mean 1.
    pub fn from_circular_phases(phases: &[f64], source: impl Into<String>) -> Result<Self> {
        if phases.len() < 3 {
            return Err(Error::InvalidInput(format!(
                "need ≥ 3 phases for spacings, got {}",
                phases.len()
            )));
        }
        let n = phases.len();
        let mut spacings = Vec::with_capacity(n);
        for i in 1..n {
            spacings.push(phases[i] - phases[i - 1]);
        }
        spacings.push(phases[0] + std::f64::consts::TAU - phases[n - 1]);
        let mut set = SpacingSet {
            spacings,
            circular: true,
            source: source.into(),
        };
        set.normalize();
        Ok(set)
    }

    /// Line-spectrum spacings (n−1 from n levels), normalized to mean 1.
    pub fn from_levels(levels: &[f64], source: impl Into<String>) -> Result<Self> {
        if levels.len() < 3 {
            return Err(Error::InvalidInput(format!(
                "need ≥ 3 levels for spacings, got {}",
                levels.len()
            )));
        }
        let spacings = levels.windows(2).map(|w| w[1] - w[0]).collect();
        let mut set = SpacingSet {
            spacings,
            circular: false,
            source: source.into(),
        };
        set.normalize();
        Ok(set)
    }

    /// Raw spacings with no normalization applied; callers that pool sets
    /// under a shared scale use this together with
    /// [`SpacingEnsemble::normalize_globally`].
    pub fn from_raw_spacings(spacings: Vec<f64>, source: impl Into<String>) -> Self {
        SpacingSet {
            spacings,
            circular: false,
            source: source.into(),
        }
    }

    fn normalize(&mut self) {
        let mean = self.spacings.iter().sum::<f64>() / self.spacings.len() as f64;
        if mean > 0.0 {
            for s in &mut self.spacings {
                *s /= mean;
            }
        }
    }

    /// Consecutive-pair ratio samples r̃ = min/max for this set; cyclic
    /// pairs when circular. Degenerate spacings are skipped and counted.
    fn ratio_samples(&self, excluded: &mut usize) -> Vec<f64> {
        let n = self.spacings.len();
        if n < 2 {
            return Vec::new();
        }
        let mean = self.spacings.iter().sum::<f64>() / n as f64;
        let threshold = DEGENERACY_THRESHOLD * mean;
        let pair_count = if self.circular { n } else { n - 1 };
        let mut out = Vec::with_capacity(pair_count);
        for i in 0..pair_count {
            let a = self.spacings[i];
            let b = self.spacings[(i + 1) % n];
            if a <= threshold || b <= threshold {
                *excluded += 1;
                continue;
            }
            out.push(a.min(b) / a.max(b));
        }
        out
    }
}

/// Unfolded circular spacings of one eigenphase set.
pub fn unfold_circular(set: &EigenphaseSet) -> Result<SpacingSet> {
    let sector = set
        .sector
        .map(|s| format!(",sector={}", s.label()))
        .unwrap_or_default();
    let source = format!(
        "j={},alpha={},tau={}{sector}",
        set.spec.block.j, set.spec.alpha, set.spec.tau
    );
    SpacingSet::from_circular_phases(&set.phases, source)
}

/// Pooled spacings from many sets; the basis for every statistic.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct SpacingEnsemble {
    pub sets: Vec<SpacingSet>,
}

impl SpacingEnsemble {
    pub fn new() -> Self {
        SpacingEnsemble::default()
    }

    pub fn push(&mut self, set: SpacingSet) {
        self.sets.push(set);
    }

    pub fn total_spacings(&self) -> usize {
        self.sets.iter().map(|s| s.spacings.len()).sum()
    }

    /// Rescale every spacing by the pooled mean (for ensembles built from
    /// raw spacings that share one physical scale).
    pub fn normalize_globally(&mut self) {
        let total = self.total_spacings();
        if total == 0 {
            return;
        }
        let mean: f64 =
            self.sets.iter().flat_map(|s| s.spacings.iter()).sum::<f64>() / total as f64;
        if mean > 0.0 {
            for set in &mut self.sets {
                for s in &mut set.spacings {
                    *s /= mean;
                }
            }
        }
    }

    /// Pooled mean and standard error of r̃ over all consecutive spacing
    /// pairs. Pairs never straddle two sets; the sample list is sorted
    /// before accumulating so pooling order cannot change the result.
    pub fn r_statistic(&self) -> Result<RatioStatistic> {
        let mut excluded = 0usize;
        let mut samples: Vec<f64> = Vec::new();
        for set in &self.sets {
            samples.extend(set.ratio_samples(&mut excluded));
        }
        if samples.is_empty() {
            return Err(Error::InvalidInput("no ratio pairs in ensemble".into()));
        }
        samples.sort_by(f64::total_cmp);
        let n = samples.len() as f64;
        let mean = samples.iter().sum::<f64>() / n;
        let var = if samples.len() > 1 {
            samples.iter().map(|r| (r - mean) * (r - mean)).sum::<f64>() / (n - 1.0)
        } else {
            0.0
        };
        Ok(RatioStatistic {
            mean,
            stderr: (var / n).sqrt(),
            samples: samples.len(),
            excluded,
        })
    }

    /// Normalized spacing density histogram. `bins` uniform bins spanning
    /// [`lo`, `hi`); densities integrate to 1 over the covered range.
    pub fn histogram(&self, bins: usize, lo: f64, hi: f64) -> Result<Histogram> {
        if bins == 0 || !(hi > lo) {
            return Err(Error::InvalidInput("bad histogram layout".into()));
        }
        let total = self.total_spacings();
        if total == 0 {
            return Err(Error::InvalidInput("empty spacing ensemble".into()));
        }
        if total < 100 {
            return Err(Error::InvalidInput(format!(
                "need ≥ 100 spacings for a density, got {total}"
            )));
        }
        let width = (hi - lo) / bins as f64;
        let mut counts = vec![0usize; bins];
        let mut in_range = 0usize;
        for s in self.sets.iter().flat_map(|s| s.spacings.iter()) {
            if *s >= lo && *s < hi {
                let b = ((s - lo) / width) as usize;
                counts[b.min(bins - 1)] += 1;
                in_range += 1;
            }
        }
        if in_range == 0 {
            return Err(Error::InvalidInput("no spacings in histogram range".into()));
        }
        let norm = in_range as f64 * width;
        Ok(Histogram {
            edges: (0..=bins).map(|b| lo + b as f64 * width).collect(),
            densities: counts.iter().map(|&c| c as f64 / norm).collect(),
            total,
            in_range,
        })
    }

    /// The default NNS layout: 50 uniform bins on [0, 4).
    pub fn nns_histogram(&self) -> Result<Histogram> {
        self.histogram(50, 0.0, 4.0)
    }
}

/// Pooled r̃ mean with its standard error.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct RatioStatistic {
    pub mean: f64,
    pub stderr: f64,
    pub samples: usize,
    /// Pairs dropped because a member spacing was degenerate.
    pub excluded: usize,
}

/// A normalized density histogram.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Histogram {
    /// bins+1 edges.
    pub edges: Vec<f64>,
    pub densities: Vec<f64>,
    pub total: usize,
    pub in_range: usize,
}

impl Histogram {
    pub fn bin_centers(&self) -> Vec<f64> {
        self.edges.windows(2).map(|w| (w[0] + w[1]) / 2.0).collect()
    }

    /// ∫ density ds over the covered range.
    pub fn integral(&self) -> f64 {
        let width = self.edges[1] - self.edges[0];
        self.densities.iter().sum::<f64>() * width
    }
}

/// Everything the runner reports for one pooled configuration.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StatisticReport {
    pub r_mean: f64,
    pub r_stderr: f64,
    pub r_samples: usize,
    pub excluded_pairs: usize,
    pub nns: Histogram,
    /// (L, Δ₃(L)) pairs; empty when not requested.
    pub delta3: Vec<(f64, f64)>,
}

/// Plain consecutive-ratio mean over one sorted level sequence, the
/// line-spectrum convenience used all over the tests.
pub fn r_of_levels(levels: &[f64]) -> f64 {
    if levels.len() < 3 {
        return f64::NAN;
    }
    let mut sum = 0.0;
    let mut count = 0usize;
    for w in levels.windows(3) {
        let s1 = w[1] - w[0];
        let s2 = w[2] - w[1];
        if s1 > 0.0 && s2 > 0.0 {
            sum += s1.min(s2) / s1.max(s2);
            count += 1;
        }
    }
    if count == 0 {
        f64::NAN
    } else {
        sum / count as f64
    }
}

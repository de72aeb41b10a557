//! Perturbation channels for the noisy Floquet evolutions: a dense random
//! symmetric (GOE) Hamiltonian acting inside one block, and an Ising chain
//! with random weights acting on the full N-spin space, plus the assembly
//! of the perturbed unitaries and perturbation-norm tracking.
//!
//! Both samplers are deterministic per seed; the GOE normalization is
//! fixed to off-diagonal variance ½ / diagonal variance 1, and sweep
//! results are reported against the measured ‖δH′‖ rather than δ.

use ndarray::prelude::*;
use ndarray_linalg::{Eigh, UPLO};
use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::floquet::{twist_phases, FloquetSpec, KickedTopBuilder};
use crate::linalg::scale_columns;
use crate::oracle::{self, FullSpaceOperator};

/// Which perturbation channel to apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NoiseKind {
    Goe,
    RandomChain,
}

/// Strength, seed, and (for the chain) system size of one noise
/// realization.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NoiseSpec {
    pub kind: NoiseKind,
    /// Std-dev scale of the perturbation, dimensionless.
    pub delta: f64,
    pub seed: u64,
    /// Spin count; only meaningful for [`NoiseKind::RandomChain`].
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_spins: Option<u32>,
}

/// Real symmetric GOE sample A = (M + Mᵀ)/2 with M entries iid standard
/// normal, so off-diagonal variance ½ and diagonal variance 1.
pub fn sample_goe(dim: usize, seed: u64) -> Array2<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut a = Array2::<f64>::zeros((dim, dim));
    // draw the full square in a fixed order, then symmetrize
    for i in 0..dim {
        for k in 0..dim {
            a[[i, k]] = rng.sample(StandardNormal);
        }
    }
    let sym = (&a + &a.t()) / 2.0;
    sym
}

/// Diagonal of the random-weight Ising chain Σ_i δ_i σ^z_i σ^z_{i+1} with
/// periodic boundary and δ_i ~ N(0, δ²), on the 2^N computational basis.
pub fn sample_random_chain(n_spins: u32, delta: f64, seed: u64) -> Result<Array1<f64>> {
    let weights = chain_weights(n_spins, seed)?
        .into_iter()
        .map(|w| delta * w)
        .collect();
    Ok(chain_diagonal(n_spins, &weights))
}

/// Chain sampler with δ_i drawn uniformly from [0, 2π] instead of the
/// Gaussian default.
pub fn sample_random_chain_uniform(n_spins: u32, seed: u64) -> Result<Array1<f64>> {
    if n_spins == 0 {
        return Err(Error::InvalidInput("spin count must be ≥ 1".into()));
    }
    check_chain_cap(n_spins)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let weights: Vec<f64> = (0..n_spins)
        .map(|_| rng.random_range(0.0..std::f64::consts::TAU))
        .collect();
    Ok(chain_diagonal(n_spins, &weights))
}

fn check_chain_cap(n_spins: u32) -> Result<()> {
    if n_spins > crate::spin::DEFAULT_FULL_SPACE_CAP {
        return Err(Error::ResourceLimit {
            what: "random chain",
            requested: n_spins,
            cap: crate::spin::DEFAULT_FULL_SPACE_CAP,
        });
    }
    Ok(())
}

fn chain_weights(n_spins: u32, seed: u64) -> Result<Vec<f64>> {
    if n_spins == 0 {
        return Err(Error::InvalidInput("spin count must be ≥ 1".into()));
    }
    check_chain_cap(n_spins)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..n_spins).map(|_| rng.sample(StandardNormal)).collect())
}

fn chain_diagonal(n_spins: u32, weights: &Vec<f64>) -> Array1<f64> {
    let n = n_spins as usize;
    let dim = 1usize << n;
    let mut diag = Array1::<f64>::zeros(dim);
    for s in 0..dim {
        let mut acc = 0.0;
        for i in 0..n {
            let zi = if s >> i & 1 == 0 { 1.0 } else { -1.0 };
            let zk = if s >> ((i + 1) % n) & 1 == 0 { 1.0 } else { -1.0 };
            acc += weights[i] * zi * zk;
        }
        diag[s] = acc;
    }
    diag
}

/// A perturbation Hamiltonian in one of the two shapes the channels use.
pub enum Perturbation {
    /// Dense real symmetric matrix (GOE channel).
    Symmetric(Array2<f64>),
    /// Diagonal on the computational basis (chain channel).
    Diagonal(Array1<f64>),
}

/// Operator (spectral) norm of δ·H′.
pub fn perturbation_norm(h: &Perturbation, delta: f64) -> Result<f64> {
    let base = match h {
        Perturbation::Symmetric(m) => crate::linalg::spectral_norm_sym(m)?,
        Perturbation::Diagonal(d) => d.iter().fold(0.0f64, |acc, v| acc.max(v.abs())),
    };
    Ok(delta.abs() * base)
}

/// A noisy unitary together with the measured norm of its generator.
pub struct PerturbedUnitary {
    pub matrix: Array2<C64>,
    /// ‖δH′‖, the spectral norm of the perturbation actually applied.
    pub perturbation_norm: f64,
}

/// exp(−i δ H) for real symmetric H, with ‖δH‖. At δ = 0 the factor is
/// skipped entirely so the caller's unperturbed path is untouched.
pub fn goe_factor(h: &Array2<f64>, delta: f64) -> Result<(Option<Array2<C64>>, f64)> {
    if delta == 0.0 {
        return Ok((None, 0.0));
    }
    let (vals, vecs) = h.eigh(UPLO::Lower)?;
    let norm = delta.abs() * vals.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    let phases: Vec<C64> = vals.iter().map(|&l| C64::from_polar(1.0, -delta * l)).collect();
    let re = mid_real(&vecs, &phases, |z| z.re);
    let im = mid_real(&vecs, &phases, |z| z.im);
    let mut out = Array2::<C64>::zeros(re.dim());
    ndarray::Zip::from(&mut out).and(&re).and(&im).for_each(|o, &r, &i| {
        *o = C64::new(r, i);
    });
    Ok((Some(out), norm))
}

fn mid_real(v: &Array2<f64>, phases: &[C64], part: impl Fn(&C64) -> f64) -> Array2<f64> {
    let mut scaled = v.t().to_owned();
    for (mut row, p) in scaled.rows_mut().into_iter().zip(phases) {
        let s = part(p);
        row.mapv_inplace(|x| x * s);
    }
    v.dot(&scaled)
}

/// Ũ = exp(−iα Jx) · exp(−iδ H_GOE) · exp(−i c Jz²) with H_GOE sampled at
/// the block dimension from the spec's noise seed.
pub fn perturbed_kicked_top(spec: &FloquetSpec) -> Result<PerturbedUnitary> {
    let noise = spec.noise.as_ref().ok_or_else(|| {
        Error::InvalidInput("perturbed_kicked_top needs a noise spec".into())
    })?;
    if noise.kind != NoiseKind::Goe {
        return Err(Error::InvalidInput(
            "perturbed_kicked_top applies only the GOE channel".into(),
        ));
    }
    let h = sample_goe(spec.block.dim(), noise.seed);
    let builder = KickedTopBuilder::new(spec.block.j)?;
    let rotation = builder.jx().rotation(spec.kick_angle());
    perturbed_from_parts(spec, &rotation, &h, noise.delta)
}

/// Same assembly from precomputed parts, for sweeps that cache the
/// rotation and draw fresh GOE samples per job.
pub fn perturbed_from_parts(
    spec: &FloquetSpec,
    rotation: &Array2<C64>,
    h_goe: &Array2<f64>,
    delta: f64,
) -> Result<PerturbedUnitary> {
    let dim = spec.block.dim();
    if h_goe.nrows() != dim || h_goe.ncols() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: h_goe.nrows(),
        });
    }
    let twist = twist_phases(spec.block.j, spec.twist_coefficient());
    let (factor, norm) = goe_factor(h_goe, delta)?;
    let matrix = match factor {
        None => scale_columns(rotation, &twist),
        Some(g) => scale_columns(&rotation.dot(&g), &twist),
    };
    Ok(PerturbedUnitary {
        matrix,
        perturbation_norm: norm,
    })
}

/// Full-space noisy all-to-all Floquet operator
/// U_K · exp(−i H_RC) · exp(−i H_A), with the chain norm ‖H_RC‖.
///
/// The chain breaks SU(2), so downstream block statistics come from
/// compressing onto the unperturbed J² eigenspaces
/// ([`oracle::block_compress_spectrum`]) and are labeled symmetry-broken.
pub fn perturbed_full_floquet(
    n_spins: u32,
    tau_a: f64,
    b_x: f64,
    chain: &NoiseSpec,
) -> Result<(FullSpaceOperator, f64)> {
    if chain.kind != NoiseKind::RandomChain {
        return Err(Error::InvalidInput(
            "perturbed_full_floquet applies only the chain channel".into(),
        ));
    }
    if let Some(n) = chain.n_spins {
        if n != n_spins {
            return Err(Error::DimensionMismatch {
                expected: n_spins as usize,
                got: n as usize,
            });
        }
    }
    let h_rc = sample_random_chain(n_spins, chain.delta, chain.seed)?;
    let norm = h_rc.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    let kick = oracle::kick_unitary_full(n_spins, b_x)?;
    let h_a = oracle::ata_diagonal(n_spins, tau_a);
    let combined: Vec<C64> = h_a
        .iter()
        .zip(h_rc.iter())
        .map(|(&a, &c)| C64::from_polar(1.0, -(a + c)))
        .collect();
    Ok((
        FullSpaceOperator {
            n_spins,
            matrix: scale_columns(&kick, &combined),
        },
        norm,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::floquet::build_kicked_top;
    use crate::spin::Spin;
    use crate::stats;
    use ndarray_linalg::QR;

    #[test]
    fn goe_sample_is_symmetric_and_reproducible() {
        let a = sample_goe(40, 7);
        let b = sample_goe(40, 7);
        assert_eq!(a, b);
        for i in 0..40 {
            for k in 0..40 {
                assert_eq!(a[[i, k]], a[[k, i]]);
            }
        }
        let c = sample_goe(40, 8);
        assert_ne!(a, c);
    }

    #[test]
    fn goe_dim_one_is_a_plain_normal_draw() {
        let a = sample_goe(1, 3);
        assert_eq!(a.dim(), (1, 1));
        assert!(a[[0, 0]].is_finite());
    }

    #[test]
    fn goe_statistics_invariant_under_orthogonal_conjugation() {
        let dim = 160;
        let a = sample_goe(dim, 11);
        let g = sample_goe(dim, 12); // any full matrix works as QR input
        let (q, _) = g.qr().unwrap();
        let rotated = q.t().dot(&a).dot(&q);

        let eig = |m: &Array2<f64>| -> Vec<f64> {
            let (vals, _) = m.eigh(UPLO::Lower).unwrap();
            vals.to_vec()
        };
        let ra = stats::r_of_levels(&eig(&a));
        let rb = stats::r_of_levels(&eig(&rotated));
        assert!((ra - rb).abs() < 1e-9, "{ra} vs {rb}");
    }

    #[test]
    fn chain_zero_delta_is_zero() {
        let d = sample_random_chain(5, 0.0, 1).unwrap();
        assert!(d.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn chain_two_spins_shares_one_bond_pattern() {
        // both bonds connect the same pair, so the diagonal is
        // (δ0 + δ1)·(1, −1, −1, 1)
        let seed = 42;
        let w = chain_weights(2, seed).unwrap();
        let total = w[0] + w[1];
        let d = sample_random_chain(2, 1.0, seed).unwrap();
        let expect = [total, -total, -total, total];
        for (a, b) in d.iter().zip(expect) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn chain_commutes_with_ata_diagonal() {
        let n = 4;
        let d = sample_random_chain(n, 0.7, 5).unwrap();
        let h_a = oracle::ata_diagonal(n, 0.3);
        // both diagonal: the exponentials commute entry by entry
        for (a, c) in h_a.iter().zip(d.iter()) {
            let ab = C64::from_polar(1.0, -a) * C64::from_polar(1.0, -c);
            let ba = C64::from_polar(1.0, -c) * C64::from_polar(1.0, -a);
            assert!((ab - ba).norm() < 1e-12);
        }
    }

    #[test]
    fn perturbation_norm_basics() {
        let zero = Perturbation::Symmetric(Array2::zeros((6, 6)));
        assert_eq!(perturbation_norm(&zero, 0.3).unwrap(), 0.0);
        let id = Perturbation::Symmetric(Array2::eye(9));
        assert!((perturbation_norm(&id, 0.25).unwrap() - 0.25).abs() < 1e-15);
        let diag = Perturbation::Diagonal(array![0.5, -2.0, 1.0]);
        assert!((perturbation_norm(&diag, 0.5).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn perturbation_norm_matches_power_iteration() {
        let dim = 301;
        let h = sample_goe(dim, 17);
        let delta = 0.05;
        let norm = perturbation_norm(&Perturbation::Symmetric(h.clone()), delta).unwrap();

        // independent oracle: power iteration on H
        let mut v = Array1::<f64>::from_elem(dim, 1.0 / (dim as f64).sqrt());
        let mut lambda = 0.0;
        for _ in 0..4000 {
            let w = h.dot(&v);
            lambda = w.dot(&v);
            let n = w.dot(&w).sqrt();
            v = w / n;
        }
        let oracle_norm = delta * lambda.abs();
        assert!(
            (norm - oracle_norm).abs() < 1e-8,
            "eigh {norm} vs power iteration {oracle_norm}"
        );
    }

    #[test]
    fn zero_delta_reproduces_unperturbed_bit_for_bit() {
        let j = Spin::from_twice(14);
        let mut spec = crate::floquet::FloquetSpec::kicked_top(1.7, 9.0, j);
        let plain = build_kicked_top(&spec).unwrap();
        spec.noise = Some(NoiseSpec {
            kind: NoiseKind::Goe,
            delta: 0.0,
            seed: 4,
            n_spins: None,
        });
        let noisy = perturbed_kicked_top(&spec).unwrap();
        assert_eq!(noisy.perturbation_norm, 0.0);
        assert_eq!(noisy.matrix, plain);
    }

    #[test]
    fn reported_norm_is_delta_times_matrix_norm() {
        let j = Spin::from_twice(20);
        let mut spec = crate::floquet::FloquetSpec::kicked_top(1.7, 9.0, j);
        spec.noise = Some(NoiseSpec {
            kind: NoiseKind::Goe,
            delta: 0.37,
            seed: 9,
            n_spins: None,
        });
        let noisy = perturbed_kicked_top(&spec).unwrap();
        let h = sample_goe(j.dim(), 9);
        let base = crate::linalg::spectral_norm_sym(&h).unwrap();
        assert!((noisy.perturbation_norm - 0.37 * base).abs() < 1e-12);
        assert!(crate::linalg::unitarity_defect(&noisy.matrix) < 1e-10);
    }

    #[test]
    fn full_floquet_zero_delta_reduces_to_clean_ata() {
        let chain = NoiseSpec {
            kind: NoiseKind::RandomChain,
            delta: 0.0,
            seed: 2,
            n_spins: Some(4),
        };
        let (noisy, norm) = perturbed_full_floquet(4, 0.3, 1.7, &chain).unwrap();
        assert_eq!(norm, 0.0);
        let clean = oracle::build_ata_floquet(4, 0.3, 1.7).unwrap();
        let diff = crate::linalg::frobenius_norm(&(&noisy.matrix - &clean.matrix));
        assert!(diff < 1e-12);
    }
}

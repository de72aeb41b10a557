//! Brute-force full-Hilbert-space construction at small N.
//!
//! Everything here exists to be checked against: the all-to-all Floquet
//! operator built directly on the 2^N computational basis, its resolution
//! into J² eigenspaces, and multiset spectrum comparison up to the global
//! phase that the per-block kicked-top form discards. The `floquet` module
//! must reproduce these block spectra through [`crate::floquet::map_ata_parameters`];
//! the acceptance suite drives that comparison over random parameter draws.

use std::collections::BTreeMap;

use ndarray::prelude::*;
use ndarray::linalg::kron;
use ndarray_linalg::{EigVals, Eigh, UPLO};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::floquet::{eigenphases, map_ata_parameters, build_kicked_top};
use crate::linalg::{circular_distance, scale_columns, wrap_phase};
use crate::spin::{self, Spin, SpinBlock, DEFAULT_FULL_SPACE_CAP};

/// Dense operator on the full 2^N computational basis.
#[derive(Clone, Debug)]
pub struct FullSpaceOperator {
    pub n_spins: u32,
    pub matrix: Array2<C64>,
}

impl FullSpaceOperator {
    pub fn dim(&self) -> usize {
        1usize << self.n_spins
    }
}

/// An operator diagonal in the computational basis, kept as its diagonal.
#[derive(Clone, Debug)]
pub struct DiagonalOperator {
    pub n_spins: u32,
    pub diagonal: Array1<f64>,
}

impl DiagonalOperator {
    /// Materialize as a dense [`FullSpaceOperator`].
    pub fn to_full(&self) -> FullSpaceOperator {
        let dim = self.diagonal.len();
        let mut m = Array2::<C64>::zeros((dim, dim));
        for (i, &d) in self.diagonal.iter().enumerate() {
            m[[i, i]] = C64::new(d, 0.0);
        }
        FullSpaceOperator {
            n_spins: self.n_spins,
            matrix: m,
        }
    }
}

fn check_cap(what: &'static str, n_spins: u32) -> Result<()> {
    if n_spins == 0 {
        return Err(Error::InvalidInput("spin count must be ≥ 1".into()));
    }
    if n_spins > DEFAULT_FULL_SPACE_CAP {
        return Err(Error::ResourceLimit {
            what,
            requested: n_spins,
            cap: DEFAULT_FULL_SPACE_CAP,
        });
    }
    Ok(())
}

/// Diagonal of H_A(τ_A) = τ_A Σ_{i<k} σ^z_i σ^z_k on basis state s:
/// with S = Σ_i z_i the pair sum is (S² − N)/2.
pub(crate) fn ata_diagonal(n_spins: u32, tau_a: f64) -> Array1<f64> {
    let n = n_spins as usize;
    let dim = 1usize << n;
    Array1::from_iter((0..dim).map(|s| {
        let down = (s as u64).count_ones() as f64;
        let big_s = n as f64 - 2.0 * down;
        tau_a * (big_s * big_s - n as f64) / 2.0
    }))
}

/// All-to-all Ising Hamiltonian τ_A Σ_{i<k} σ^z_i σ^z_k, diagonal in the
/// computational basis.
pub fn build_ata_hamiltonian(n_spins: u32, tau_a: f64) -> Result<DiagonalOperator> {
    check_cap("build_ata_hamiltonian", n_spins)?;
    Ok(DiagonalOperator {
        n_spins,
        diagonal: ata_diagonal(n_spins, tau_a),
    })
}

/// ⊗_i exp(−i b_x σ^x_i), the transverse kick on all spins.
pub(crate) fn kick_unitary_full(n_spins: u32, b_x: f64) -> Result<Array2<C64>> {
    check_cap("kick_unitary_full", n_spins)?;
    let (c, s) = (b_x.cos(), b_x.sin());
    let single = array![
        [C64::new(c, 0.0), C64::new(0.0, -s)],
        [C64::new(0.0, -s), C64::new(c, 0.0)]
    ];
    let mut u = single.clone();
    for _ in 1..n_spins {
        u = kron(&u, &single);
    }
    Ok(u)
}

/// Full-space Floquet operator U_K(b_x) · U_A(τ_A) =
/// exp(−i b_x Σσ^x) · exp(−i H_A).
pub fn build_ata_floquet(n_spins: u32, tau_a: f64, b_x: f64) -> Result<FullSpaceOperator> {
    check_cap("build_ata_floquet", n_spins)?;
    let kick = kick_unitary_full(n_spins, b_x)?;
    let phases: Vec<C64> = ata_diagonal(n_spins, tau_a)
        .iter()
        .map(|&h| C64::from_polar(1.0, -h))
        .collect();
    Ok(FullSpaceOperator {
        n_spins,
        matrix: scale_columns(&kick, &phases),
    })
}

/// Orthonormal J² eigenbasis of the N-spin space, grouped by spin label.
/// Group k spans the m_j(2j+1)-dimensional eigenspace of eigenvalue
/// j(j+1); sizes are validated against the Clebsch–Gordan multiplicities.
pub struct BlockBasis {
    pub n_spins: u32,
    groups: Vec<(SpinBlock, Array2<f64>)>,
}

impl BlockBasis {
    pub fn new(n_spins: u32) -> Result<Self> {
        check_cap("BlockBasis", n_spins)?;
        let jsq = spin::j_squared_real_capped(n_spins, DEFAULT_FULL_SPACE_CAP)?;
        let (vals, vecs) = jsq.eigh(UPLO::Lower)?;
        let blocks = spin::block_multiplicities(n_spins)?;
        let mut groups = Vec::with_capacity(blocks.len());
        for block in blocks {
            let c = block.j.casimir();
            let idx: Vec<usize> = vals
                .iter()
                .enumerate()
                .filter(|(_, &v)| (v - c).abs() < 1e-6)
                .map(|(i, _)| i)
                .collect();
            let expect = block.multiplicity as usize * block.dim();
            if idx.len() != expect {
                return Err(Error::InvalidInput(format!(
                    "J² eigenspace for j = {} has dimension {} instead of {}",
                    block.j,
                    idx.len(),
                    expect
                )));
            }
            groups.push((block, vecs.select(Axis(1), &idx)));
        }
        Ok(BlockBasis { n_spins, groups })
    }

    pub fn blocks(&self) -> impl Iterator<Item = SpinBlock> + '_ {
        self.groups.iter().map(|(b, _)| *b)
    }

    fn group(&self, j: Spin) -> Option<&(SpinBlock, Array2<f64>)> {
        self.groups.iter().find(|(b, _)| b.j == j)
    }

    /// Rotate `u` into the J² eigenbasis, blocks ordered as in `groups`.
    fn rotate(&self, u: &Array2<C64>) -> (Array2<C64>, Vec<f64>) {
        let dim = u.nrows();
        let mut v = Array2::<f64>::zeros((dim, dim));
        let mut casimirs = Vec::with_capacity(dim);
        let mut col = 0;
        for (block, w) in &self.groups {
            v.slice_mut(s![.., col..col + w.ncols()]).assign(w);
            casimirs.extend(std::iter::repeat(block.j.casimir()).take(w.ncols()));
            col += w.ncols();
        }
        let re = u.mapv(|z| z.re);
        let im = u.mapv(|z| z.im);
        let rot_re = v.t().dot(&re).dot(&v);
        let rot_im = v.t().dot(&im).dot(&v);
        let mut rotated = Array2::<C64>::zeros((dim, dim));
        ndarray::Zip::from(&mut rotated)
            .and(&rot_re)
            .and(&rot_im)
            .for_each(|o, &r, &i| *o = C64::new(r, i));
        (rotated, casimirs)
    }
}

/// ‖[U, J²]‖_F from the rotated matrix: Σ_{ab} |U'_ab|² (λ_a − λ_b)².
fn commutator_norm(rotated: &Array2<C64>, casimirs: &[f64]) -> f64 {
    let mut acc = 0.0;
    for ((a, b), z) in rotated.indexed_iter() {
        let d = casimirs[a] - casimirs[b];
        if d != 0.0 {
            acc += z.norm_sqr() * d * d;
        }
    }
    acc.sqrt()
}

/// Per-block eigenphase multisets of a J²-symmetric unitary, multiplicity
/// copies pooled. Errors with the measured ‖[U, J²]‖_F when the operator
/// does not commute with J² to 1e-8.
pub fn block_project_spectrum(u: &FullSpaceOperator) -> Result<BTreeMap<Spin, Vec<f64>>> {
    let basis = BlockBasis::new(u.n_spins)?;
    block_project_spectrum_with(u, &basis)
}

/// [`block_project_spectrum`] against a precomputed basis.
pub fn block_project_spectrum_with(
    u: &FullSpaceOperator,
    basis: &BlockBasis,
) -> Result<BTreeMap<Spin, Vec<f64>>> {
    let (rotated, casimirs) = basis.rotate(&u.matrix);
    let comm = commutator_norm(&rotated, &casimirs);
    if comm > 1e-8 {
        return Err(Error::SymmetryBroken { commutator_norm: comm });
    }
    spectra_of_diagonal_blocks(&rotated, basis, true)
}

/// Eigenvalue phases of the compressions P_j U P_j onto the unperturbed
/// J² eigenspaces, with no commutator requirement. For a symmetry-broken
/// U the compressions are contractions, not unitaries; their eigenvalue
/// arguments are still well defined and are what the noisy per-block
/// statistics are computed from.
pub fn block_compress_spectrum(
    u: &FullSpaceOperator,
    basis: &BlockBasis,
) -> Result<BTreeMap<Spin, Vec<f64>>> {
    let (rotated, _) = basis.rotate(&u.matrix);
    spectra_of_diagonal_blocks(&rotated, basis, false)
}

fn spectra_of_diagonal_blocks(
    rotated: &Array2<C64>,
    basis: &BlockBasis,
    require_unit_modulus: bool,
) -> Result<BTreeMap<Spin, Vec<f64>>> {
    let mut out = BTreeMap::new();
    let mut col = 0;
    for (block, w) in &basis.groups {
        let k = w.ncols();
        let sub = Array2::from_shape_fn((k, k), |(r, c)| rotated[[col + r, col + c]]);
        let vals = if k == 1 {
            array![sub[[0, 0]]]
        } else {
            sub.eigvals()?
        };
        let mut phases = Vec::with_capacity(k);
        for v in vals.iter() {
            if require_unit_modulus {
                let off = (v.norm() - 1.0).abs();
                if off > 1e-10 {
                    return Err(Error::InvalidInput(format!(
                        "block j = {} eigenvalue modulus off by {off:.3e}",
                        block.j
                    )));
                }
            }
            phases.push(wrap_phase(v.arg()));
        }
        phases.sort_by(f64::total_cmp);
        out.insert(block.j, phases);
        col += k;
    }
    Ok(out)
}

/// Precomputed per-block compression of the kick factor, so that spectra
/// of U_K·diag(d) cost O(k²·2^N) per diagonal instead of a full-space
/// basis rotation. Used by the runner for clean and chain-noise sweeps.
pub struct BlockCompressor {
    basis: BlockBasis,
    /// Per block: W_jᵀ · U_K, a (k × 2^N) complex matrix.
    kick_rows: Vec<(SpinBlock, Array2<C64>)>,
}

impl BlockCompressor {
    pub fn new(n_spins: u32, b_x: f64) -> Result<Self> {
        let basis = BlockBasis::new(n_spins)?;
        let kick = kick_unitary_full(n_spins, b_x)?;
        let re = kick.mapv(|z| z.re);
        let im = kick.mapv(|z| z.im);
        let mut kick_rows = Vec::with_capacity(basis.groups.len());
        for (block, w) in &basis.groups {
            let a_re = w.t().dot(&re);
            let a_im = w.t().dot(&im);
            let mut a = Array2::<C64>::zeros(a_re.dim());
            ndarray::Zip::from(&mut a)
                .and(&a_re)
                .and(&a_im)
                .for_each(|o, &r, &i| *o = C64::new(r, i));
            kick_rows.push((*block, a));
        }
        Ok(BlockCompressor { basis, kick_rows })
    }

    pub fn basis(&self) -> &BlockBasis {
        &self.basis
    }

    /// Eigenvalue phases of the block compressions of U_K · diag(d), for
    /// the requested spins.
    pub fn phases_for_diagonal(
        &self,
        diagonal_phases: &[C64],
        blocks: &[Spin],
    ) -> Result<Vec<(Spin, Vec<f64>)>> {
        let mut out = Vec::with_capacity(blocks.len());
        for j in blocks {
            let (block, a) = self
                .kick_rows
                .iter()
                .find(|(b, _)| b.j == *j)
                .ok_or_else(|| Error::InvalidInput(format!("no block with j = {j}")))?;
            let (_, w) = self.basis.group(block.j).expect("basis and kick_rows agree");
            if diagonal_phases.len() != a.ncols() {
                return Err(Error::DimensionMismatch {
                    expected: a.ncols(),
                    got: diagonal_phases.len(),
                });
            }
            // sub = (W_jᵀ U_K) · diag(d) · W_j
            let mut scaled = Array2::<C64>::zeros(w.dim());
            ndarray::Zip::from(&mut scaled)
                .and(w)
                .and_broadcast(&ArrayView2::from_shape(
                    (diagonal_phases.len(), 1),
                    diagonal_phases,
                )
                .expect("column shape"))
                .for_each(|o, &wv, &d| *o = d * wv);
            let sub = a.dot(&scaled);
            let vals = if sub.nrows() == 1 {
                array![sub[[0, 0]]]
            } else {
                sub.eigvals()?
            };
            let mut phases: Vec<f64> = vals.iter().map(|v| wrap_phase(v.arg())).collect();
            phases.sort_by(f64::total_cmp);
            out.push((block.j, phases));
        }
        Ok(out)
    }
}

/// Result of aligning two circular spectra up to one constant offset.
#[derive(Clone, Copy, Debug)]
pub struct PhaseAlignment {
    /// The constant added to the source phases.
    pub offset: f64,
    /// Largest circular distance after alignment.
    pub max_error: f64,
}

/// Best constant-offset match between two equal-length sorted phase lists,
/// minimizing over the cyclic pairing as well as the offset. This absorbs
/// the global phase the per-block kicked-top form drops.
pub fn align_global_phase(source: &[f64], target: &[f64]) -> Option<PhaseAlignment> {
    if source.is_empty() || source.len() != target.len() {
        return None;
    }
    let n = source.len();
    let mut best: Option<PhaseAlignment> = None;
    for shift in 0..n {
        // circular mean of the pairing differences
        let (mut sx, mut sy) = (0.0, 0.0);
        for i in 0..n {
            let d = target[(i + shift) % n] - source[i];
            sx += d.cos();
            sy += d.sin();
        }
        let offset = sy.atan2(sx);
        let mut max_err = 0.0f64;
        for i in 0..n {
            let err = circular_distance(source[i] + offset, target[(i + shift) % n]);
            max_err = max_err.max(err);
        }
        if best.map_or(true, |b| max_err < b.max_error) {
            best = Some(PhaseAlignment {
                offset: wrap_phase(offset),
                max_error: max_err,
            });
        }
    }
    best
}

/// Worst per-block spectrum mismatch between the full-space all-to-all
/// Floquet operator and its mapped kicked-top blocks, after global-phase
/// alignment. The heart of the equivalence check.
pub fn block_equivalence_max_error(n_spins: u32, tau_a: f64, b_x: f64) -> Result<f64> {
    let basis = BlockBasis::new(n_spins)?;
    block_equivalence_max_error_with(n_spins, tau_a, b_x, &basis)
}

/// [`block_equivalence_max_error`] against a precomputed basis.
pub fn block_equivalence_max_error_with(
    n_spins: u32,
    tau_a: f64,
    b_x: f64,
    basis: &BlockBasis,
) -> Result<f64> {
    let full = build_ata_floquet(n_spins, tau_a, b_x)?;
    let by_block = block_project_spectrum_with(&full, basis)?;
    let j_max = Spin::from_twice(n_spins);
    let mut worst = 0.0f64;
    for block in basis.blocks() {
        let spec = map_ata_parameters(tau_a, b_x, SpinBlock::single(block.j), j_max)?;
        let kt = build_kicked_top(&spec)?;
        let mut mapped = eigenphases(&kt)?;
        // the full-space block pools all multiplicity copies
        let copies = block.multiplicity as usize;
        if copies > 1 {
            let single = mapped.clone();
            for _ in 1..copies {
                mapped.extend_from_slice(&single);
            }
            mapped.sort_by(f64::total_cmp);
        }
        let target = &by_block[&block.j];
        let alignment = align_global_phase(&mapped, target)
            .ok_or_else(|| Error::InvalidInput("empty spectrum".into()))?;
        worst = worst.max(alignment.max_error);
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{frobenius_norm, unitarity_defect};
    use crate::spin::OperatorKind;
    use std::f64::consts::PI;

    #[test]
    fn ata_hamiltonian_two_and_three_spins() {
        let h2 = build_ata_hamiltonian(2, 1.0).unwrap();
        assert_eq!(h2.diagonal.to_vec(), vec![1.0, -1.0, -1.0, 1.0]);

        let h3 = build_ata_hamiltonian(3, 1.0).unwrap();
        let expect = [3.0, -1.0, -1.0, -1.0, -1.0, -1.0, -1.0, 3.0];
        assert_eq!(h3.diagonal.to_vec(), expect.to_vec());
    }

    #[test]
    fn ata_hamiltonian_matches_collective_identity() {
        // H_A(τ) = 2τ (Jz² − N/4·𝟙) entry by entry
        for n in [2u32, 5, 8] {
            let tau = 0.37;
            let h = build_ata_hamiltonian(n, tau).unwrap();
            let jzsq = spin::full_space_collective(n, OperatorKind::JzSq).unwrap();
            for (s, &d) in h.diagonal.iter().enumerate() {
                let expect = 2.0 * tau * (jzsq[[s, s]].re - n as f64 / 4.0);
                assert!((d - expect).abs() < 1e-12, "N={n} s={s}");
            }
        }
    }

    #[test]
    fn diagonal_operator_materializes() {
        let h = build_ata_hamiltonian(2, 2.0).unwrap().to_full();
        assert_eq!(h.matrix[[0, 0]], C64::new(2.0, 0.0));
        assert_eq!(h.matrix[[0, 1]], C64::new(0.0, 0.0));
    }

    #[test]
    fn ata_floquet_single_spin_no_kick_is_identity() {
        let u = build_ata_floquet(1, 5.0, 0.0).unwrap();
        let defect = frobenius_norm(&(&u.matrix - &Array2::<C64>::eye(2)));
        assert!(defect < 1e-14);
    }

    #[test]
    fn ata_floquet_pure_kick_is_product_of_rotations() {
        let u = build_ata_floquet(2, 0.0, PI / 2.0).unwrap();
        // exp(−iπ/2 σx) = −iσx per spin, so U = −σx ⊗ σx
        let mut expect = Array2::<C64>::zeros((4, 4));
        expect[[0, 3]] = C64::new(-1.0, 0.0);
        expect[[1, 2]] = C64::new(-1.0, 0.0);
        expect[[2, 1]] = C64::new(-1.0, 0.0);
        expect[[3, 0]] = C64::new(-1.0, 0.0);
        assert!(frobenius_norm(&(&u.matrix - &expect)) < 1e-12);
    }

    #[test]
    fn ata_floquet_is_unitary() {
        let u = build_ata_floquet(6, 0.3, 1.7).unwrap();
        assert!(unitarity_defect(&u.matrix) < 1e-10);
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            build_ata_floquet(13, 0.1, 0.1),
            Err(Error::ResourceLimit { .. })
        ));
    }

    #[test]
    fn identity_projects_to_zero_phases() {
        let u = FullSpaceOperator {
            n_spins: 2,
            matrix: Array2::eye(4),
        };
        let spectra = block_project_spectrum(&u).unwrap();
        assert_eq!(spectra[&Spin::from_twice(2)], vec![0.0, 0.0, 0.0]);
        assert_eq!(spectra[&Spin::from_twice(0)], vec![0.0]);
    }

    #[test]
    fn two_spin_twist_only_block_phases() {
        // N=2, τ_A=1, b_x=0: triplet sees diag(1, −1, 1), singlet −1
        let u = build_ata_floquet(2, 1.0, 0.0).unwrap();
        let spectra = block_project_spectrum(&u).unwrap();
        let triplet = &spectra[&Spin::from_twice(2)];
        let expect = [-1.0, -1.0, 1.0];
        for (p, e) in triplet.iter().zip(expect) {
            assert!((p - e).abs() < 1e-10, "triplet {triplet:?}");
        }
        let singlet = &spectra[&Spin::from_twice(0)];
        assert!((singlet[0] - 1.0).abs() < 1e-10, "singlet {singlet:?}");
    }

    #[test]
    fn commutator_check_passes_for_ata() {
        let basis = BlockBasis::new(5).unwrap();
        let u = build_ata_floquet(5, 0.61, 2.3).unwrap();
        let (rotated, casimirs) = basis.rotate(&u.matrix);
        let comm = commutator_norm(&rotated, &casimirs);
        assert!(comm < 1e-10, "‖[U, J²]‖ = {comm:.2e}");
    }

    #[test]
    fn symmetry_breaking_is_detected() {
        // a generic diagonal (not a function of Jz alone) breaks SU(2)
        let n = 3;
        let mut u = build_ata_floquet(n, 0.2, 0.9).unwrap();
        let dim = u.dim();
        for s in 0..dim {
            let tweak = C64::from_polar(1.0, 0.17 * (s * s + 1) as f64);
            for r in 0..dim {
                u.matrix[[r, s]] *= tweak;
            }
        }
        match block_project_spectrum(&u) {
            Err(Error::SymmetryBroken { commutator_norm }) => {
                assert!(commutator_norm > 1e-3);
            }
            other => panic!("expected symmetry-broken error, got {other:?}"),
        }
    }

    #[test]
    fn multiplicity_copies_share_identical_spectra() {
        // N=4: j=1 appears three times; the pooled multiset must be a
        // threefold copy of one block spectrum
        let u = build_ata_floquet(4, 0.41, 1.3).unwrap();
        let spectra = block_project_spectrum(&u).unwrap();
        let pooled = &spectra[&Spin::from_twice(2)];
        assert_eq!(pooled.len(), 9);
        for chunk in pooled.chunks(3) {
            let spread = chunk[2] - chunk[0];
            assert!(spread.abs() < 1e-9, "copy spread {spread:.2e}");
        }
    }

    #[test]
    fn compression_equals_projection_when_symmetric() {
        let n = 4;
        let tau_a = 0.27;
        let b_x = 1.1;
        let u = build_ata_floquet(n, tau_a, b_x).unwrap();
        let basis = BlockBasis::new(n).unwrap();
        let strict = block_project_spectrum_with(&u, &basis).unwrap();
        let loose = block_compress_spectrum(&u, &basis).unwrap();
        for (j, phases) in &strict {
            for (a, b) in phases.iter().zip(&loose[j]) {
                assert!((a - b).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn block_compressor_matches_projection() {
        let n = 4;
        let tau_a = 0.27;
        let b_x = 1.1;
        let u = build_ata_floquet(n, tau_a, b_x).unwrap();
        let strict = block_project_spectrum(&u).unwrap();

        let comp = BlockCompressor::new(n, b_x).unwrap();
        let d: Vec<C64> = ata_diagonal(n, tau_a)
            .iter()
            .map(|&h| C64::from_polar(1.0, -h))
            .collect();
        let spins: Vec<Spin> = comp.basis().blocks().map(|b| b.j).collect();
        for (j, phases) in comp.phases_for_diagonal(&d, &spins).unwrap() {
            for (a, b) in phases.iter().zip(&strict[&j]) {
                assert!((a - b).abs() < 1e-9, "j = {j}");
            }
        }
    }

    #[test]
    fn alignment_recovers_constant_offset() {
        let source = vec![-2.0, -0.5, 0.3, 2.9];
        let target: Vec<f64> = source.iter().map(|p| wrap_phase(p + 2.5)).collect();
        let mut sorted = target.clone();
        sorted.sort_by(f64::total_cmp);
        let a = align_global_phase(&source, &sorted).unwrap();
        assert!(a.max_error < 1e-12, "max err {:.2e}", a.max_error);
        assert!(circular_distance(a.offset, 2.5) < 1e-12);
    }

    #[test]
    fn alignment_rejects_mismatched_spectra() {
        let source = vec![0.0, 1.0, 2.0];
        let target = vec![0.0, 1.0, 2.5];
        let a = align_global_phase(&source, &target).unwrap();
        assert!(a.max_error > 0.1);
    }

    #[test]
    fn block_equivalence_single_draw() {
        let err = block_equivalence_max_error(6, 0.3, 1.7).unwrap();
        assert!(err < 1e-10, "max phase error {err:.2e}");
    }
}

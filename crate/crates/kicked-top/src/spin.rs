//! Collective spin operators on a spin-j irrep and the decomposition of the
//! N-spin-½ Hilbert space into SU(2) irreps.
//!
//! Matrices are written in the |j, m⟩ basis with m descending,
//! m = j, j−1, …, −j, so Jz is diagonal with descending entries. Every other
//! module inherits this ordering.

use ndarray::prelude::*;
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest N for which dense 2^N×2^N operators are built by default.
pub const DEFAULT_FULL_SPACE_CAP: u32 = 12;

/// A spin label j, stored as 2j to keep half-integers exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Spin(u32);

impl Spin {
    /// Spin from its doubled label, e.g. `from_twice(3)` is j = 3/2.
    pub const fn from_twice(twice_j: u32) -> Self {
        Spin(twice_j)
    }

    /// Spin from a floating label; rejects anything that is not a
    /// nonnegative multiple of ½.
    pub fn new(j: f64) -> Result<Self> {
        let twice = 2.0 * j;
        if !(j >= 0.0) || (twice - twice.round()).abs() > 1e-9 {
            return Err(Error::InvalidSpin(j));
        }
        Ok(Spin(twice.round() as u32))
    }

    pub const fn twice(self) -> u32 {
        self.0
    }

    pub fn value(self) -> f64 {
        f64::from(self.0) / 2.0
    }

    /// Dimension of the irrep, 2j+1.
    pub const fn dim(self) -> usize {
        self.0 as usize + 1
    }

    /// j(j+1), computed exactly from the doubled label.
    pub fn casimir(self) -> f64 {
        let tj = f64::from(self.0);
        tj * (tj + 2.0) / 4.0
    }

    /// The magnetic quantum numbers m = j, j−1, …, −j in basis order.
    pub fn m_values(self) -> impl Iterator<Item = f64> {
        let tj = i64::from(self.0);
        (0..self.dim()).map(move |a| (tj - 2 * a as i64) as f64 / 2.0)
    }
}

impl std::fmt::Display for Spin {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// One SU(2) irrep appearing in the N-spin decomposition: the spin label
/// and how many copies of it occur.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpinBlock {
    pub j: Spin,
    pub multiplicity: u64,
}

impl SpinBlock {
    /// A single copy of the spin-j irrep.
    pub const fn single(j: Spin) -> Self {
        SpinBlock { j, multiplicity: 1 }
    }

    pub const fn dim(&self) -> usize {
        self.j.dim()
    }
}

/// Which collective operator to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum OperatorKind {
    Jx,
    Jy,
    Jz,
    /// Jz²
    JzSq,
    /// Total angular momentum squared, J·J.
    JSq,
}

/// A dense Hermitian spin operator on one irrep.
#[derive(Clone, Debug)]
pub struct SpinOperator {
    pub block: SpinBlock,
    pub kind: OperatorKind,
    pub matrix: Array2<C64>,
}

/// Ladder coefficient √(j(j+1) − m(m+1)) for the state below index `a`,
/// computed from doubled labels so the radicand is an exact integer.
fn ladder_coeff(twice_j: u32, a: usize) -> f64 {
    let tj = i64::from(twice_j);
    let tm = tj - 2 * a as i64; // doubled m of basis index a
    let radicand = tj * (tj + 2) - tm * (tm + 2);
    (radicand as f64).sqrt() / 2.0
}

/// Jx on the spin-j irrep as a real symmetric (tridiagonal) matrix.
pub(crate) fn jx_real(j: Spin) -> Array2<f64> {
    let dim = j.dim();
    let mut m = Array2::<f64>::zeros((dim, dim));
    for a in 1..dim {
        let c = ladder_coeff(j.twice(), a) / 2.0;
        m[[a - 1, a]] = c;
        m[[a, a - 1]] = c;
    }
    m
}

/// Standard angular-momentum matrix on a block, in the descending-m basis.
///
/// Jz is diagonal with entries m; Jx = (J₊+J₋)/2 and Jy = (J₊−J₋)/2i are
/// built from the ladder coefficients √(j(j+1) − m(m±1)).
pub fn build_spin_operator(block: SpinBlock, kind: OperatorKind) -> SpinOperator {
    let j = block.j;
    let dim = j.dim();
    let mut m = Array2::<C64>::zeros((dim, dim));
    match kind {
        OperatorKind::Jx => {
            for a in 1..dim {
                let c = ladder_coeff(j.twice(), a) / 2.0;
                m[[a - 1, a]] = C64::new(c, 0.0);
                m[[a, a - 1]] = C64::new(c, 0.0);
            }
        }
        OperatorKind::Jy => {
            for a in 1..dim {
                let c = ladder_coeff(j.twice(), a) / 2.0;
                m[[a - 1, a]] = C64::new(0.0, -c);
                m[[a, a - 1]] = C64::new(0.0, c);
            }
        }
        OperatorKind::Jz => {
            for (a, mv) in j.m_values().enumerate() {
                m[[a, a]] = C64::new(mv, 0.0);
            }
        }
        OperatorKind::JzSq => {
            for (a, mv) in j.m_values().enumerate() {
                m[[a, a]] = C64::new(mv * mv, 0.0);
            }
        }
        OperatorKind::JSq => {
            let c = j.casimir();
            for a in 0..dim {
                m[[a, a]] = C64::new(c, 0.0);
            }
        }
    }
    SpinOperator {
        block,
        kind,
        matrix: m,
    }
}

/// Irrep content of (½)^⊗N by iterated Clebsch–Gordan coupling, in exact
/// integer arithmetic: adding one spin ½ sends multiplicity m_j to
/// m_{j−½} + m_{j+½}.
///
/// Returns blocks with j descending from N/2. Multiplicities satisfy
/// Σ_j m_j (2j+1) = 2^N.
pub fn block_multiplicities(n_spins: u32) -> Result<Vec<SpinBlock>> {
    if n_spins == 0 {
        return Err(Error::InvalidInput("spin count must be ≥ 1".into()));
    }
    if n_spins > 64 {
        return Err(Error::ResourceLimit {
            what: "block_multiplicities",
            requested: n_spins,
            cap: 64,
        });
    }
    // counts[tj] = multiplicity of the spin tj/2 irrep
    let mut counts: Vec<u64> = vec![0, 1]; // one spin: a single j = 1/2
    for _ in 1..n_spins {
        let mut next = vec![0u64; counts.len() + 1];
        for (tj, &c) in counts.iter().enumerate() {
            if c == 0 {
                continue;
            }
            next[tj + 1] = next[tj + 1]
                .checked_add(c)
                .ok_or(Error::InvalidInput("multiplicity overflow".into()))?;
            if tj >= 1 {
                next[tj - 1] = next[tj - 1]
                    .checked_add(c)
                    .ok_or(Error::InvalidInput("multiplicity overflow".into()))?;
            }
        }
        counts = next;
    }
    let blocks = counts
        .iter()
        .enumerate()
        .rev()
        .filter(|&(_, &c)| c > 0)
        .map(|(tj, &c)| SpinBlock {
            j: Spin::from_twice(tj as u32),
            multiplicity: c,
        })
        .collect();
    Ok(blocks)
}

fn check_cap(what: &'static str, n_spins: u32, cap: u32) -> Result<()> {
    if n_spins == 0 {
        return Err(Error::InvalidInput("spin count must be ≥ 1".into()));
    }
    if n_spins > cap {
        return Err(Error::ResourceLimit {
            what,
            requested: n_spins,
            cap,
        });
    }
    Ok(())
}

/// Collective operator ½ Σ_i σ^q_i (or its square variants) on the full
/// 2^N computational basis. Exponential cost; capped at
/// [`DEFAULT_FULL_SPACE_CAP`] spins.
pub fn full_space_collective(n_spins: u32, kind: OperatorKind) -> Result<Array2<C64>> {
    full_space_collective_capped(n_spins, kind, DEFAULT_FULL_SPACE_CAP)
}

/// Same as [`full_space_collective`] with an explicit cap.
pub fn full_space_collective_capped(
    n_spins: u32,
    kind: OperatorKind,
    cap: u32,
) -> Result<Array2<C64>> {
    check_cap("full_space_collective", n_spins, cap)?;
    let n = n_spins as usize;
    let dim = 1usize << n;
    let mut m = Array2::<C64>::zeros((dim, dim));
    // Bit b of a basis index s encodes spin b: 0 ↦ |↑⟩ (σz = +1), 1 ↦ |↓⟩.
    match kind {
        OperatorKind::Jz => {
            for s in 0..dim {
                m[[s, s]] = C64::new(half_sum_z(s, n), 0.0);
            }
        }
        OperatorKind::JzSq => {
            for s in 0..dim {
                let z = half_sum_z(s, n);
                m[[s, s]] = C64::new(z * z, 0.0);
            }
        }
        OperatorKind::Jx => {
            for s in 0..dim {
                for b in 0..n {
                    m[[s ^ (1 << b), s]] += C64::new(0.5, 0.0);
                }
            }
        }
        OperatorKind::Jy => {
            // σy |↑⟩ = i|↓⟩ and σy |↓⟩ = −i|↑⟩
            for s in 0..dim {
                for b in 0..n {
                    let sign = if s & (1 << b) == 0 { 1.0 } else { -1.0 };
                    m[[s ^ (1 << b), s]] += C64::new(0.0, 0.5 * sign);
                }
            }
        }
        OperatorKind::JSq => {
            let real = j_squared_real_capped(n_spins, cap)?;
            return Ok(crate::linalg::complexify(&real));
        }
    }
    Ok(m)
}

/// Total J² on the computational basis as a real symmetric matrix, using
/// J² = Σ_{i<k} SWAP_{ik} + (3N − N(N−1))/4 · 𝟙.
pub(crate) fn j_squared_real_capped(n_spins: u32, cap: u32) -> Result<Array2<f64>> {
    check_cap("j_squared_real", n_spins, cap)?;
    let n = n_spins as usize;
    let dim = 1usize << n;
    let nf = n as f64;
    let diag_shift = (3.0 * nf - nf * (nf - 1.0)) / 4.0;
    let mut m = Array2::<f64>::zeros((dim, dim));
    for s in 0..dim {
        m[[s, s]] += diag_shift;
        for i in 0..n {
            for k in (i + 1)..n {
                let bi = (s >> i) & 1;
                let bk = (s >> k) & 1;
                if bi == bk {
                    m[[s, s]] += 1.0;
                } else {
                    let t = s ^ (1 << i) ^ (1 << k);
                    m[[t, s]] += 1.0;
                }
            }
        }
    }
    Ok(m)
}

/// ½ Σ_i σ^z_i evaluated on basis state s (bit = 1 means spin down).
fn half_sum_z(s: usize, n: usize) -> f64 {
    let down = (s & ((1usize << n) - 1)).count_ones() as f64;
    (n as f64 - 2.0 * down) / 2.0
}

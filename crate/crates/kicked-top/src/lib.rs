//! Floquet spectra of kicked collective-spin models.
//!
//! This crate builds the kicked-top Floquet operator on a single spin-j
//! irrep and the all-to-all kicked-Ising Floquet operator on N spins ½,
//! resolves the latter into its SU(2) symmetry blocks, and characterises
//! each block's dynamics through eigenphase statistics: the spacing-ratio
//! statistic, the nearest-neighbour spacing distribution, and the
//! Dyson–Mehta Δ₃ spectral rigidity. Two noise channels (a dense random
//! symmetric perturbation per block and a random-weight Ising chain on the
//! full space) probe how robust those statistics are.
//!
//! The main entry points:
//!
//! - [`spin`] — spin-j operators and the irrep decomposition of (½)^⊗N;
//! - [`floquet`] — block Floquet unitaries and eigenphase extraction;
//! - [`oracle`] — brute-force full-space construction at small N, used to
//!   verify the block decomposition and the parameter map;
//! - [`stats`] — spacing ensembles, r̃ ratios, NNS histograms, Δ₃, and
//!   reference ensembles (Poisson / GOE / GUE);
//! - [`classical`] — the classical kicked-top map and phase portraits;
//! - [`noise`] — perturbation samplers and noisy Floquet assembly;
//! - [`runner`] — manifest-driven sweeps with deterministic seeds,
//!   cached spectra, and plot-ready figure files.
//!
//! Runnable demonstrations of each capability live in `examples/`; the
//! `kicked-top` binary exposes the sweep runner on the command line.

extern crate openblas_src;

pub mod classical;
pub mod error;
pub mod floquet;
pub mod linalg;
pub mod noise;
pub mod oracle;
pub mod runner;
pub mod spin;
pub mod stats;

pub use error::{Error, Result};
pub use floquet::{Convention, EigenphaseSet, FloquetSpec, ParitySector};
pub use spin::{Spin, SpinBlock};

//! Small dense linear-algebra helpers shared by the physics modules.

use ndarray::prelude::*;
use ndarray_linalg::{Eigh, UPLO};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Conjugate transpose.
pub fn adjoint(m: &Array2<C64>) -> Array2<C64> {
    let mut out = m.t().to_owned();
    out.mapv_inplace(|z| z.conj());
    out
}

/// Frobenius norm of a complex matrix.
pub fn frobenius_norm(m: &Array2<C64>) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// ‖U†U − I‖_F, an upper bound on the operator-norm deviation from unitarity.
pub fn unitarity_defect(u: &Array2<C64>) -> f64 {
    let mut g = adjoint(u).dot(u);
    for i in 0..g.nrows() {
        g[[i, i]] -= C64::new(1.0, 0.0);
    }
    frobenius_norm(&g)
}

/// Errors unless `‖U†U − I‖_F < tol`.
pub fn require_unitary(u: &Array2<C64>, tol: f64) -> Result<()> {
    let defect = unitarity_defect(u);
    if defect < tol {
        Ok(())
    } else {
        Err(Error::NotUnitary { defect, tol })
    }
}

/// Spectral (operator) norm of a real symmetric matrix, via full
/// diagonalization.
pub fn spectral_norm_sym(m: &Array2<f64>) -> Result<f64> {
    let (vals, _) = m.eigh(UPLO::Lower)?;
    Ok(vals.iter().fold(0.0, |acc: f64, v| acc.max(v.abs())))
}

/// U · diag(d), i.e. scale column k of `u` by `d[k]`.
pub fn scale_columns(u: &Array2<C64>, d: &[C64]) -> Array2<C64> {
    assert_eq!(u.ncols(), d.len());
    let mut out = u.to_owned();
    for (mut col, &s) in out.columns_mut().into_iter().zip(d) {
        col.mapv_inplace(|z| z * s);
    }
    out
}

/// diag(d) · U, i.e. scale row k of `u` by `d[k]`.
pub fn scale_rows(u: &Array2<C64>, d: &[C64]) -> Array2<C64> {
    assert_eq!(u.nrows(), d.len());
    let mut out = u.to_owned();
    for (mut row, &s) in out.rows_mut().into_iter().zip(d) {
        row.mapv_inplace(|z| z * s);
    }
    out
}

/// Promote a real matrix to complex.
pub fn complexify(m: &Array2<f64>) -> Array2<C64> {
    m.mapv(|x| C64::new(x, 0.0))
}

/// Map an angle to the branch (−π, π].
pub fn wrap_phase(theta: f64) -> f64 {
    let mut t = theta.rem_euclid(std::f64::consts::TAU);
    if t > std::f64::consts::PI {
        t -= std::f64::consts::TAU;
    }
    // rem_euclid can return exactly TAU for tiny negative inputs
    if t <= -std::f64::consts::PI {
        t += std::f64::consts::TAU;
    }
    t
}

/// Distance between two angles on the circle, in [0, π].
pub fn circular_distance(a: f64, b: f64) -> f64 {
    wrap_phase(a - b).abs()
}

//! Dense matrix helpers: PSD certification, `He(.)`, Kronecker weights and
//! block assembly.

use nalgebra::{DMatrix, DVector, Dyn, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Outcome of a positive-semidefiniteness test.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PsdCertificate {
    pub min_eigenvalue: f64,
    /// Spectral norm of the symmetrized matrix.
    pub scale: f64,
    /// Tolerance used: pass iff `min_eigenvalue >= -tol * max(1, scale)`.
    pub tol: f64,
    pub passed: bool,
}

impl PsdCertificate {
    /// `min_eigenvalue / max(1, scale)`; negative means indefinite.
    pub fn relative_margin(&self) -> f64 {
        self.min_eigenvalue / self.scale.max(1.0)
    }
}

/// Largest absolute entry.
pub fn max_abs(a: &DMatrix<f64>) -> f64 {
    a.iter().fold(0.0_f64, |m, x| m.max(x.abs()))
}

/// Largest absolute elementwise difference.
pub fn max_abs_diff(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    a.iter()
        .zip(b.iter())
        .fold(0.0_f64, |m, (x, y)| m.max((x - y).abs()))
}

pub fn ensure_square(a: &DMatrix<f64>) -> Result<()> {
    if a.nrows() != a.ncols() {
        return Err(Error::NotSquare {
            rows: a.nrows(),
            cols: a.ncols(),
        });
    }
    Ok(())
}

/// `A + A^T`.
pub fn he(a: &DMatrix<f64>) -> DMatrix<f64> {
    a + a.transpose()
}

pub fn symmetrize(a: &DMatrix<f64>) -> DMatrix<f64> {
    (a + a.transpose()) * 0.5
}

/// Certifies `A >= 0`.
///
/// `A` is symmetrized first; an asymmetry larger than `tol * max(1, |A|_max)`
/// is rejected rather than silently averaged away.
pub fn psd_check(a: &DMatrix<f64>, tol: f64) -> Result<PsdCertificate> {
    ensure_square(a)?;
    if a.nrows() == 0 {
        return Ok(PsdCertificate {
            min_eigenvalue: 0.0,
            scale: 0.0,
            tol,
            passed: true,
        });
    }
    let asymmetry = max_abs_diff(a, &a.transpose());
    if asymmetry > tol.max(1e-12) * max_abs(a).max(1.0) {
        return Err(Error::Asymmetric { asymmetry });
    }
    let eig = symmetric_eigenvalues(a);
    let min_eigenvalue = eig.min();
    let scale = eig.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    Ok(PsdCertificate {
        min_eigenvalue,
        scale,
        tol,
        passed: min_eigenvalue >= -tol * scale.max(1.0),
    })
}

/// Eigenvalues of `(A + Aᵀ)/2`.
///
/// The implicit QR iteration occasionally returns NaN on finite, exactly
/// rank-deficient inputs; a diagonal shift sidesteps that and is removed after.
pub fn symmetric_eigenvalues(a: &DMatrix<f64>) -> DVector<f64> {
    symmetric_eigen(a).eigenvalues
}

/// Eigen-decomposition of `(A + Aᵀ)/2` with the same NaN safeguard.
pub fn symmetric_eigen(a: &DMatrix<f64>) -> SymmetricEigen<f64, Dyn> {
    let sym = symmetrize(a);
    let eig = sym.clone().symmetric_eigen();
    if eig.eigenvalues.iter().all(|x| x.is_finite()) {
        return eig;
    }
    let shift = max_abs(&sym).max(1.0);
    let size = sym.nrows();
    let mut eig = (sym + DMatrix::identity(size, size) * shift).symmetric_eigen();
    eig.eigenvalues.add_scalar_mut(-shift);
    eig
}

/// `diag(d) ⊗ W`.
pub fn kron_diag(d: &[f64], w: &DMatrix<f64>) -> DMatrix<f64> {
    let n = w.nrows();
    let mut out = DMatrix::zeros(d.len() * n, d.len() * n);
    for (k, dk) in d.iter().enumerate() {
        out.view_mut((k * n, k * n), (n, n)).copy_from(&(w * *dk));
    }
    out
}

/// Block-diagonal matrix from square blocks.
pub fn block_diag(blocks: &[&DMatrix<f64>]) -> DMatrix<f64> {
    let size: usize = blocks.iter().map(|b| b.nrows()).sum();
    let mut out = DMatrix::zeros(size, size);
    let mut at = 0;
    for b in blocks {
        out.view_mut((at, at), (b.nrows(), b.ncols())).copy_from(b);
        at += b.nrows();
    }
    out
}

/// `[[a, b], [b^T, d]]`.
pub fn block_sym2(a: &DMatrix<f64>, b: &DMatrix<f64>, d: &DMatrix<f64>) -> DMatrix<f64> {
    let (p, q) = (a.nrows(), d.nrows());
    let mut out = DMatrix::zeros(p + q, p + q);
    out.view_mut((0, 0), (p, p)).copy_from(a);
    out.view_mut((0, p), (p, q)).copy_from(b);
    out.view_mut((p, 0), (q, p)).copy_from(&b.transpose());
    out.view_mut((p, p), (q, q)).copy_from(d);
    out
}

/// Inverse of a symmetric positive definite matrix via Cholesky.
pub fn spd_inverse(a: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    ensure_square(a)?;
    let chol = a
        .clone()
        .cholesky()
        .ok_or_else(|| Error::NotPositiveDefinite(format!("{}x{} matrix", a.nrows(), a.ncols())))?;
    Ok(symmetrize(&chol.inverse()))
}

/// 2-norm condition number; infinite for singular input.
pub fn condition_number(a: &DMatrix<f64>) -> f64 {
    let sv = a.clone().singular_values();
    let (lo, hi) = (sv.min(), sv.max());
    if lo <= 0.0 {
        f64::INFINITY
    } else {
        hi / lo
    }
}

/// `x^T A y`.
pub fn quad(x: &DVector<f64>, a: &DMatrix<f64>, y: &DVector<f64>) -> f64 {
    x.dot(&(a * y))
}

/// Relative difference `|a - b| / max(1, |a|, |b|)`.
pub fn rel_diff(a: f64, b: f64) -> f64 {
    (a - b).abs() / 1.0_f64.max(a.abs()).max(b.abs())
}

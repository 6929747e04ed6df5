//! Executable equivalence constructions: the basis change that turns an
//! independent-functions estimate into an orthogonal-basis one, and the
//! orthogonal rotation that turns a simplified GFMB estimate into a
//! simplified FMB one.

use nalgebra::{DMatrix, DVector};

use super::psi::PsiMatrix;
use super::weights::FreeMatrix;
use crate::error::{Error, Result};
use crate::function_spaces::{Basis, MomentVector, Polynomial};
use crate::linalg::{self, PsdCertificate};

/// Condition numbers above this are treated as singular.
const SINGULAR_COND: f64 = 1e12;

/// `p_k = Σ_j c_kj Π_j` with Gram values `γ_kl = <p_k, p_l> = Σ_j c_kj c_lj ρ_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisChange {
    c: DMatrix<f64>,
    gram: DMatrix<f64>,
    condition: f64,
}

impl BasisChange {
    pub fn new(c: DMatrix<f64>, norms: &[f64]) -> Result<Self> {
        linalg::ensure_square(&c)?;
        if c.nrows() != norms.len() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} basis change for {} basis functions",
                c.nrows(),
                c.ncols(),
                norms.len()
            )));
        }
        let condition = linalg::condition_number(&c);
        if !condition.is_finite() || condition > SINGULAR_COND {
            return Err(Error::SingularBasisChange);
        }
        let rho = DMatrix::from_diagonal(&DVector::from_column_slice(norms));
        let gram = linalg::symmetrize(&(&c * rho * c.transpose()));
        Ok(Self { c, gram, condition })
    }

    pub fn size(&self) -> usize {
        self.c.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.c
    }

    /// `γ`
    pub fn gram(&self) -> &DMatrix<f64> {
        &self.gram
    }

    pub fn condition_number(&self) -> f64 {
        self.condition
    }

    /// The independent functions `p_k` themselves.
    pub fn functions(&self, basis: &Basis) -> Result<Vec<Polynomial>> {
        if basis.order() + 1 != self.size() {
            return Err(Error::DimensionMismatch("basis order does not match C".into()));
        }
        Ok((0..self.size())
            .map(|k| {
                basis
                    .functions()
                    .iter()
                    .enumerate()
                    .fold(Polynomial::zero(), |acc, (j, pi)| {
                        acc.add(&pi.scale(self.c[(k, j)]))
                    })
            })
            .collect())
    }

    /// `w̃_k = <f, p_k> = Σ_j c_kj w_j`, applied to every part.
    pub fn transform_moments(&self, w: &MomentVector) -> Result<MomentVector> {
        if w.order() + 1 != self.size() {
            return Err(Error::DimensionMismatch("moment order does not match C".into()));
        }
        let n = w.dim();
        let parts = w
            .parts()
            .iter()
            .map(|src| {
                let mut out = DVector::zeros(src.len());
                for k in 0..self.size() {
                    for j in 0..self.size() {
                        let mut dst = out.rows_mut(k * n, n);
                        dst += src.rows(j * n, n) * self.c[(k, j)];
                    }
                }
                out
            })
            .collect();
        MomentVector::from_parts(w.order(), n, parts)
    }
}

/// Result of mapping an IFB-GFMB parameter set onto an orthogonal-basis one.
#[derive(Debug, Clone)]
pub struct GfmbTransform {
    /// `Ψ̃` with `Z̃_jj = Σ_kl c_kj c_lj Z_kl`, `Ñ_j = Σ_k c_kj N_k`,
    /// `Z̃_kl = Ñ_k W⁻¹ Ñ_lᵀ` for `k ≠ l`.
    pub psi: PsiMatrix,
    /// Schur complement `Φ` of the input `Ψ`.
    pub phi: DMatrix<f64>,
    /// PSD certificate of the assembled `Ψ̃`.
    pub certificate: PsdCertificate,
}

/// Builds `Ψ̃` such that the GFMB bound with `(Ψ̃, ρ)` equals the IFB-GFMB bound
/// with `(Ψ, γ)` for every `χ`, and certifies `Ψ̃ ⪰ 0`.
pub fn transform_ifb_to_gfmb(psi: &PsiMatrix, change: &BasisChange) -> Result<GfmbTransform> {
    let order = psi.order();
    if change.size() != order + 1 {
        return Err(Error::DimensionMismatch("basis change does not match Psi".into()));
    }
    let cert = psi.psd(super::bounds::PSI_TOL)?;
    if !cert.passed {
        return Err(Error::InfeasiblePsi {
            min_eigenvalue: cert.min_eigenvalue,
        });
    }
    let c = change.matrix();
    let m = psi.block_size();
    let n_tilde: Vec<DMatrix<f64>> = (0..=order)
        .map(|j| {
            (0..=order).fold(DMatrix::zeros(m, psi.dim()), |acc, k| {
                acc + psi.n_block(k) * c[(k, j)]
            })
        })
        .collect();
    let winv = psi.weight_inverse();
    let mut z = vec![vec![DMatrix::zeros(m, m); order + 1]; order + 1];
    for j in 0..=order {
        for l in 0..=order {
            if j == l {
                let mut acc = DMatrix::zeros(m, m);
                for k in 0..=order {
                    for kk in 0..=order {
                        acc += psi.z(k, kk) * (c[(k, j)] * c[(kk, j)]);
                    }
                }
                z[j][j] = linalg::symmetrize(&acc);
            } else {
                z[j][l] = &n_tilde[j] * winv * n_tilde[l].transpose();
            }
        }
    }
    // off-diagonal products are exact transposes only up to rounding
    for j in 0..=order {
        for l in (j + 1)..=order {
            z[l][j] = z[j][l].transpose();
        }
    }
    let psi_tilde = PsiMatrix::new(z, n_tilde, psi.weight().clone())?;
    let certificate = psi_tilde.psd(super::bounds::PSI_TOL)?;
    Ok(GfmbTransform {
        psi: psi_tilde,
        phi: psi.schur_complement(),
        certificate,
    })
}

/// Result of writing `χ = η Q w` and substituting `Ñ = η Qᵀ N`.
#[derive(Debug, Clone)]
pub struct SfmbTransform {
    pub eta: f64,
    /// Orthogonal, maps `w / |w|` to `χ / |χ|`.
    pub q: DMatrix<f64>,
    pub n_tilde: FreeMatrix,
    /// `max |QᵀQ − I|`
    pub orthogonality_error: f64,
}

/// Given `(χ, N, w)` produces `Ñ` whose S-FMB value equals the S-GFMB value of `(χ, N)`.
pub fn sfmb_from_sgfmb(
    chi: &DVector<f64>,
    n: &FreeMatrix,
    w: &MomentVector,
) -> Result<SfmbTransform> {
    let ws = w.stacked();
    if chi.len() != ws.len() || n.rows() != chi.len() {
        return Err(Error::DimensionMismatch(format!(
            "chi ({}), N rows ({}) and w ({}) must agree",
            chi.len(),
            n.rows(),
            ws.len()
        )));
    }
    let (chi_norm, w_norm) = (chi.norm(), ws.norm());
    let size = ws.len();
    if w_norm == 0.0 {
        if chi_norm != 0.0 {
            return Err(Error::ZeroMoment);
        }
        return Ok(SfmbTransform {
            eta: 0.0,
            q: DMatrix::identity(size, size),
            n_tilde: n.scaled_rows(&DMatrix::zeros(size, size)),
            orthogonality_error: 0.0,
        });
    }
    let eta = chi_norm / w_norm;
    let q = if chi_norm == 0.0 {
        DMatrix::identity(size, size)
    } else {
        rotation_onto(&(ws / w_norm), &(chi / chi_norm))
    };
    let orthogonality_error =
        linalg::max_abs_diff(&(q.transpose() * &q), &DMatrix::identity(size, size));
    let n_tilde = n.scaled_rows(&(q.transpose() * eta));
    Ok(SfmbTransform {
        eta,
        q,
        n_tilde,
        orthogonality_error,
    })
}

/// `I − 2 x xᵀ / xᵀx`
fn householder(x: &DVector<f64>) -> DMatrix<f64> {
    let size = x.len();
    DMatrix::identity(size, size) - x * x.transpose() * (2.0 / x.norm_squared())
}

/// Orthogonal `Q` with `Q u = v` for unit vectors `u`, `v`.
fn rotation_onto(u: &DVector<f64>, v: &DVector<f64>) -> DMatrix<f64> {
    let size = u.len();
    if (u - v).norm() < 1e-14 {
        return DMatrix::identity(size, size);
    }
    let first = householder(u);
    if (u + v).norm() < 1e-14 {
        return first;
    }
    // first sends u to -u, the second reflects -u onto v
    let second = householder(&(-u - v));
    second * first
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function_spaces::Segment;

    fn moment(values: &[f64]) -> MomentVector {
        MomentVector::from_parts(values.len() - 1, 1, vec![DVector::from_column_slice(values)])
            .unwrap()
    }

    #[test]
    fn rotation_maps_u_to_v() {
        let u = DVector::from_vec(vec![1.0, 2.0, -1.0]).normalize();
        for v in [
            DVector::from_vec(vec![0.0, 1.0, 3.0]).normalize(),
            -u.clone(),
            u.clone(),
        ] {
            let q = rotation_onto(&u, &v);
            assert!((&q * &u - &v).norm() < 1e-14);
            assert!(linalg::max_abs_diff(&(q.transpose() * &q), &DMatrix::identity(3, 3)) < 1e-14);
        }
    }

    #[test]
    fn identity_case() {
        let w = moment(&[1.0, 2.0]);
        let n = FreeMatrix::padded(&DMatrix::from_element(2, 2, 0.5), Segment::First, 1).unwrap();
        let t = sfmb_from_sgfmb(&w.stacked(), &n, &w).unwrap();
        assert_eq!(t.eta, 1.0);
        assert_eq!(t.q, DMatrix::identity(2, 2));
        assert_eq!(&t.n_tilde, &n);
    }

    #[test]
    fn scaling_case() {
        let w = moment(&[1.0, 2.0]);
        let n = FreeMatrix::padded(&DMatrix::from_element(2, 2, 0.5), Segment::First, 1).unwrap();
        let t = sfmb_from_sgfmb(&(w.stacked() * 2.0), &n, &w).unwrap();
        assert!((t.eta - 2.0).abs() < 1e-15);
        assert_eq!(t.q, DMatrix::identity(2, 2));
        assert!(linalg::max_abs_diff(t.n_tilde.matrix(), &(n.matrix() * 2.0)) < 1e-15);
    }

    #[test]
    fn zero_moment_with_nonzero_chi() {
        let w = moment(&[0.0, 0.0]);
        let n = FreeMatrix::padded(&DMatrix::identity(2, 2), Segment::First, 1).unwrap();
        assert!(matches!(
            sfmb_from_sgfmb(&DVector::from_element(2, 1.0), &n, &w),
            Err(Error::ZeroMoment)
        ));
        assert!(sfmb_from_sgfmb(&DVector::zeros(2), &n, &w).is_ok());
    }

    #[test]
    fn singular_change_is_rejected() {
        let c = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 4.0]);
        assert!(matches!(
            BasisChange::new(c, &[1.0, 1.0 / 3.0]),
            Err(Error::SingularBasisChange)
        ));
    }

    #[test]
    fn gram_of_scaled_change() {
        let bc = BasisChange::new(DMatrix::identity(3, 3) * 2.0, &[1.0, 0.5, 0.25]).unwrap();
        assert_eq!(bc.gram()[(1, 1)], 2.0);
        assert_eq!(bc.gram()[(0, 1)], 0.0);
    }
}

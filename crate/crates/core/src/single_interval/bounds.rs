//! Single-interval lower bounds on `<f_i, W f_i>`.
//!
//! All evaluators return the right-hand side of the respective inequality;
//! the guarantee `bound <= <f_i, W f_i>` is checked against
//! [`exact_energy`](crate::function_spaces::exact_energy) in the tests.

use nalgebra::{DMatrix, DVector};

use super::psi::PsiMatrix;
use super::transforms::BasisChange;
use super::weights::{FreeMatrix, FreeParams, WeightBlockMatrix};
use crate::error::{Error, Result};
use crate::function_spaces::{MomentVector, Segment};
use crate::linalg;

/// Tolerance for the `Ψ ⪰ 0` precondition.
pub const PSI_TOL: f64 = 1e-8;

fn require_feasible(psi: &PsiMatrix) -> Result<()> {
    let cert = psi.psd(PSI_TOL)?;
    if !cert.passed {
        return Err(Error::InfeasiblePsi {
            min_eigenvalue: cert.min_eigenvalue,
        });
    }
    Ok(())
}

fn check_psi_shapes(psi: &PsiMatrix, fp: &FreeParams, w: &MomentVector) -> Result<()> {
    if fp.chi.len() != psi.block_size() {
        return Err(Error::DimensionMismatch(format!(
            "chi has length {}, Psi blocks are {}",
            fp.chi.len(),
            psi.block_size()
        )));
    }
    if w.dim() != psi.dim() || w.order() != psi.order() {
        return Err(Error::DimensionMismatch(format!(
            "moments are (n={}, nu={}), Psi is (n={}, nu={})",
            w.dim(),
            w.order(),
            psi.dim(),
            psi.order()
        )));
    }
    Ok(())
}

/// `Σ_k N_k w_k` over the moments of `fp.segment`.
fn coupling(psi: &PsiMatrix, w: &MomentVector, seg: Segment) -> Result<DVector<f64>> {
    let mut acc = DVector::zeros(psi.block_size());
    for k in 0..=psi.order() {
        acc += psi.n_block(k) * w.block(seg, k)?;
    }
    Ok(acc)
}

/// Generalized free-matrix-based bound
/// `−χᵀ(Σ_k ρ_k Z_kk)χ − He(χᵀ N w)`.
pub fn gfmb_bound(
    psi: &PsiMatrix,
    norms: &[f64],
    fp: &FreeParams,
    w: &MomentVector,
) -> Result<f64> {
    check_psi_shapes(psi, fp, w)?;
    if norms.len() != psi.order() + 1 {
        return Err(Error::DimensionMismatch(format!(
            "{} norm-squares for order {}",
            norms.len(),
            psi.order()
        )));
    }
    require_feasible(psi)?;
    let chi = &fp.chi;
    let mut quadratic = DMatrix::zeros(psi.block_size(), psi.block_size());
    for (k, rho) in norms.iter().enumerate() {
        quadratic += psi.z(k, k) * *rho;
    }
    let linear = chi.dot(&coupling(psi, w, fp.segment)?);
    Ok(-linalg::quad(chi, &quadratic, chi) - 2.0 * linear)
}

/// Bound for a linearly independent (non-orthogonal) system `p_k`:
/// `−χᵀ(Σ_k γ_kk Z_kk + Σ_{k<l} He(γ_kl Z_kl))χ − Σ_k He(χᵀ N_k w̃_k)`,
/// where `w̃` holds the projections on `p_k` (see [`BasisChange::transform_moments`]).
pub fn ifb_gfmb_bound(
    psi: &PsiMatrix,
    change: &BasisChange,
    fp: &FreeParams,
    w_tilde: &MomentVector,
) -> Result<f64> {
    check_psi_shapes(psi, fp, w_tilde)?;
    if change.size() != psi.order() + 1 {
        return Err(Error::DimensionMismatch(format!(
            "basis change of size {} for order {}",
            change.size(),
            psi.order()
        )));
    }
    require_feasible(psi)?;
    let gamma = change.gram();
    let mut quadratic = DMatrix::zeros(psi.block_size(), psi.block_size());
    for k in 0..=psi.order() {
        quadratic += psi.z(k, k) * gamma[(k, k)];
        for l in (k + 1)..=psi.order() {
            quadratic += linalg::he(psi.z(k, l)) * gamma[(k, l)];
        }
    }
    let chi = &fp.chi;
    let linear = chi.dot(&coupling(psi, w_tilde, fp.segment)?);
    Ok(-linalg::quad(chi, &quadratic, chi) - 2.0 * linear)
}

fn check_free_matrix(
    n: &FreeMatrix,
    w: &MomentVector,
    weights: &WeightBlockMatrix,
) -> Result<()> {
    if n.matrix().ncols() != w.len()
        || weights.num_parts() != w.num_parts()
        || weights.part_len() != w.part_len()
    {
        return Err(Error::DimensionMismatch(format!(
            "free matrix has {} columns, moments {} entries, weights {}x{} parts",
            n.matrix().ncols(),
            w.len(),
            weights.num_parts(),
            weights.part_len()
        )));
    }
    Ok(())
}

/// Simplified GFMB bound `−He(χᵀ N w) − χᵀ N Ŵ₋ Nᵀ χ`.
pub fn sgfmb_bound(
    n: &FreeMatrix,
    chi: &DVector<f64>,
    w: &MomentVector,
    weights: &WeightBlockMatrix,
) -> Result<f64> {
    check_free_matrix(n, w, weights)?;
    if chi.len() != n.rows() {
        return Err(Error::DimensionMismatch(format!(
            "chi has length {}, free matrix has {} rows",
            chi.len(),
            n.rows()
        )));
    }
    let nt_chi = n.matrix().transpose() * chi;
    let inv = weights.padded_inverse(n.segment())?;
    Ok(-2.0 * nt_chi.dot(&w.stacked()) - linalg::quad(&nt_chi, &inv, &nt_chi))
}

/// Bessel-based bound `w^{iT} 𝒲_i w^i`.
pub fn bbi_bound(w: &MomentVector, weights: &WeightBlockMatrix, seg: Segment) -> Result<f64> {
    if weights.part_len() != w.part_len() {
        return Err(Error::DimensionMismatch(format!(
            "weight blocks of size {}, moments of size {}",
            weights.part_len(),
            w.part_len()
        )));
    }
    let wi = w.part(seg)?;
    Ok(linalg::quad(wi, weights.part(seg)?, wi))
}

/// Simplified FMB bound: [`sgfmb_bound`] with `χ = w`, i.e.
/// `−wᵀ(He(N) + N Ŵ₋ Nᵀ)w`.
pub fn sfmb_bound(n: &FreeMatrix, w: &MomentVector, weights: &WeightBlockMatrix) -> Result<f64> {
    sgfmb_bound(n, &w.stacked(), w, weights)
}

/// Free matrix with `Nᵀχ = −Ŵ_i w`, for which [`sgfmb_bound`] equals [`bbi_bound`].
///
/// Uses the minimum-norm solution `N = −χ (Ŵ_i w)ᵀ / (χᵀχ)`.
pub fn optimal_bbi_params(
    w: &MomentVector,
    weights: &WeightBlockMatrix,
    chi: &DVector<f64>,
    seg: Segment,
) -> Result<FreeMatrix> {
    let chi_sq = chi.norm_squared();
    if chi_sq == 0.0 {
        return Err(Error::ZeroChi);
    }
    if weights.part_len() != w.part_len() || weights.num_parts() != w.num_parts() {
        return Err(Error::DimensionMismatch(
            "weights and moments disagree in shape".into(),
        ));
    }
    let target = weights.padded(seg)? * w.stacked();
    let matrix = chi * target.transpose() * (-1.0 / chi_sq);
    FreeMatrix::from_padded(matrix, seg, w.part_len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function_spaces::{moments, Basis, Space, VectorPolynomial};

    fn setup(f: Vec<Vec<f64>>, order: usize) -> (MomentVector, WeightBlockMatrix) {
        let s = Space::continuous(0.0, 1.0).unwrap();
        let b = Basis::build(&s, order).unwrap();
        let f = VectorPolynomial::from_coeffs(f).unwrap();
        let w = moments(&s, &b, &f).unwrap();
        let wb = WeightBlockMatrix::single(b.norms(), &DMatrix::identity(2, 2)).unwrap();
        (w, wb)
    }

    #[test]
    fn bbi_is_exact_on_basis_span() {
        let (w, wb) = setup(vec![vec![0.0, 1.0], vec![1.0]], 1);
        let v = bbi_bound(&w, &wb, Segment::First).unwrap();
        assert!((v - 4.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn bbi_for_quadratic() {
        let (w, wb) = setup(vec![vec![0.0, 0.0, 1.0], vec![0.0]], 1);
        let v = bbi_bound(&w, &wb, Segment::First).unwrap();
        assert!((v - 7.0 / 36.0).abs() < 1e-14);
        assert!(v < 0.2);
    }

    #[test]
    fn zero_moments_give_zero() {
        let (w, wb) = setup(vec![vec![0.0], vec![0.0]], 2);
        assert_eq!(bbi_bound(&w, &wb, Segment::First).unwrap(), 0.0);
    }

    #[test]
    fn zero_chi_gives_zero_gfmb() {
        let (w, _) = setup(vec![vec![0.0, 0.0, 1.0], vec![0.0]], 1);
        let nb = vec![DMatrix::from_element(4, 2, 0.7), DMatrix::from_element(4, 2, -0.2)];
        let psi = PsiMatrix::minimal(nb, DMatrix::identity(2, 2)).unwrap();
        let fp = FreeParams::new(DVector::zeros(4), Segment::First);
        assert_eq!(gfmb_bound(&psi, &[1.0, 1.0 / 3.0], &fp, &w).unwrap(), 0.0);
    }

    #[test]
    fn infeasible_psi_is_rejected() {
        let (w, _) = setup(vec![vec![0.0, 1.0], vec![1.0]], 0);
        let nb = vec![DMatrix::identity(2, 2)];
        let phi = -DMatrix::identity(2, 2);
        let psi = PsiMatrix::from_schur(&phi, nb, DMatrix::identity(2, 2)).unwrap();
        let fp = FreeParams::new(DVector::from_element(2, 1.0), Segment::First);
        assert!(matches!(
            gfmb_bound(&psi, &[1.0], &fp, &w),
            Err(Error::InfeasiblePsi { .. })
        ));
    }

    #[test]
    fn sfmb_with_negative_weight_equals_bbi() {
        let (w, wb) = setup(vec![vec![0.3, -1.0, 2.0], vec![1.0, 0.5]], 1);
        let n = FreeMatrix::padded(&-wb.part(Segment::First).unwrap().clone(), Segment::First, 1)
            .unwrap();
        let a = sfmb_bound(&n, &w, &wb).unwrap();
        let b = bbi_bound(&w, &wb, Segment::First).unwrap();
        assert!(linalg::rel_diff(a, b) < 1e-12);
    }

    #[test]
    fn zero_free_matrix_gives_zero() {
        let (w, wb) = setup(vec![vec![0.3, -1.0, 2.0], vec![1.0, 0.5]], 1);
        let n = FreeMatrix::padded(&DMatrix::zeros(4, 4), Segment::First, 1).unwrap();
        assert_eq!(sfmb_bound(&n, &w, &wb).unwrap(), 0.0);
        assert_eq!(sgfmb_bound(&n, &DVector::from_element(4, 1.0), &w, &wb).unwrap(), 0.0);
    }

    #[test]
    fn optimal_params_reach_bbi() {
        let (w, wb) = setup(vec![vec![0.3, -1.0, 2.0], vec![1.0, 0.5]], 1);
        let chi = DVector::from_vec(vec![1.0, -2.0, 0.5, 0.25]);
        let n = optimal_bbi_params(&w, &wb, &chi, Segment::First).unwrap();
        let target = wb.padded(Segment::First).unwrap() * w.stacked();
        assert!((n.matrix().transpose() * &chi + target).norm() < 1e-10);
        let a = sgfmb_bound(&n, &chi, &w, &wb).unwrap();
        let b = bbi_bound(&w, &wb, Segment::First).unwrap();
        assert!(linalg::rel_diff(a, b) < 1e-12);
        assert_eq!(
            optimal_bbi_params(&w, &wb, &DVector::zeros(4), Segment::First),
            Err(Error::ZeroChi)
        );
    }

    #[test]
    fn optimal_params_for_zero_moments_vanish() {
        let (w, wb) = setup(vec![vec![0.0], vec![0.0]], 1);
        let chi = DVector::from_element(4, 1.0);
        let n = optimal_bbi_params(&w, &wb, &chi, Segment::First).unwrap();
        assert!(linalg::max_abs(n.matrix()) == 0.0);
        assert_eq!(sgfmb_bound(&n, &chi, &w, &wb).unwrap(), 0.0);
    }
}

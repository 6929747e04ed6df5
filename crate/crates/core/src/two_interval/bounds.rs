use nalgebra::DMatrix;

use super::geometry::{SplitGeometry, WeightLadder};
use super::omega::{omega_b, omega_f};
use crate::error::{Error, Result};
use crate::function_spaces::MomentVector;
use crate::linalg;

/// `(1/h) wᵀ Ω w` for any of the two-interval matrices.
pub fn convexified_bound(w: &MomentVector, omega: &DMatrix<f64>, h: f64) -> Result<f64> {
    if w.num_parts() != 2 || omega.nrows() != w.len() || omega.ncols() != w.len() {
        return Err(Error::DimensionMismatch(format!(
            "two-part moments of length {} against a {}x{} matrix",
            w.len(),
            omega.nrows(),
            omega.ncols()
        )));
    }
    let ws = w.stacked();
    Ok(linalg::quad(&ws, omega, &ws) / h)
}

/// `(1/h) wᵀ Ω_B(α) w`.
pub fn dbbi_bound(w: &MomentVector, g: &SplitGeometry, ladder: &WeightLadder) -> Result<f64> {
    convexified_bound(w, &omega_b(g, ladder)?, g.h)
}

/// `(1/h) wᵀ Ω_F(α, N̂¹, N̂²) w`.
pub fn dsfmb_bound(
    w: &MomentVector,
    g: &SplitGeometry,
    n1: &DMatrix<f64>,
    n2: &DMatrix<f64>,
    ladder: &WeightLadder,
) -> Result<f64> {
    convexified_bound(w, &omega_f(g, n1, n2, ladder)?, g.h)
}

/// `N̂¹, N̂²` for which the DS-FMB bound at this `w` equals the DBBI bound:
/// `N̂^iᵀ w = −(𝒲 / h_i) w^i`, solved with minimum norm.
pub fn optimal_fmb_params(
    w: &MomentVector,
    g: &SplitGeometry,
    ladder: &WeightLadder,
) -> Result<(DMatrix<f64>, DMatrix<f64>)> {
    if w.num_parts() != 2 || w.part_len() != ladder.size() {
        return Err(Error::DimensionMismatch(
            "moments do not match the weight ladder".into(),
        ));
    }
    let ws = w.stacked();
    let m1 = ladder.size();
    let norm_sq = ws.norm_squared();
    if norm_sq == 0.0 {
        return Ok((DMatrix::zeros(2 * m1, m1), DMatrix::zeros(2 * m1, m1)));
    }
    let build = |part: &nalgebra::DVector<f64>, hi: f64| {
        let target = ladder.matrix() * part / hi;
        &ws * target.transpose() * (-1.0 / norm_sq)
    };
    Ok((build(&w.parts()[0], g.h1), build(&w.parts()[1], g.h2)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function_spaces::{split_moments, Basis, Space, VectorPolynomial};
    use crate::two_interval::omega::omega_rcc;

    fn linear_case() -> (MomentVector, SplitGeometry, WeightLadder) {
        let s = Space::continuous(0.0, 1.0).unwrap();
        let (d1, d2) = s.split(0.5).unwrap();
        let (b1, b2) = (Basis::build(&d1, 1).unwrap(), Basis::build(&d2, 1).unwrap());
        let f = VectorPolynomial::from_coeffs(vec![vec![0.0, 1.0], vec![1.0]]).unwrap();
        let w = split_moments((&d1, &d2), (&b1, &b2), &f).unwrap();
        let g = SplitGeometry::new(0.0, 0.5, 1.0).unwrap();
        let l = WeightLadder::new(&DMatrix::identity(2, 2), 1).unwrap();
        (w, g, l)
    }

    #[test]
    fn dbbi_exact_on_span() {
        let (w, g, l) = linear_case();
        assert!((dbbi_bound(&w, &g, &l).unwrap() - 4.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn rcc_zero_below_exact() {
        let (w, g, l) = linear_case();
        let o5 = omega_rcc(&DMatrix::zeros(4, 4), &l).unwrap();
        let v = convexified_bound(&w, &o5, g.h).unwrap();
        // (1/h) wᵀ diag(𝒲, 𝒲) w = α·bbi_1 + β·bbi_2
        assert!((v - 0.5 * 4.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn zero_function() {
        let (_, g, l) = linear_case();
        let w = MomentVector::from_parts(
            1,
            2,
            vec![nalgebra::DVector::zeros(4), nalgebra::DVector::zeros(4)],
        )
        .unwrap();
        assert_eq!(dbbi_bound(&w, &g, &l).unwrap(), 0.0);
        let (n1, n2) = optimal_fmb_params(&w, &g, &l).unwrap();
        assert_eq!(dsfmb_bound(&w, &g, &n1, &n2, &l).unwrap(), 0.0);
    }

    #[test]
    fn optimal_fmb_reaches_dbbi() {
        let (w, g, l) = linear_case();
        let (n1, n2) = optimal_fmb_params(&w, &g, &l).unwrap();
        let a = dsfmb_bound(&w, &g, &n1, &n2, &l).unwrap();
        assert!(linalg::rel_diff(a, dbbi_bound(&w, &g, &l).unwrap()) < 1e-12);
    }

    #[test]
    fn single_part_moments_rejected() {
        let (_, g, l) = linear_case();
        let w = MomentVector::from_parts(1, 2, vec![nalgebra::DVector::zeros(4)]).unwrap();
        assert!(dbbi_bound(&w, &g, &l).is_err());
    }
}

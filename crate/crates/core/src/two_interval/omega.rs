//! The `M_2 × M_2` matrices whose quadratic forms `(1/h) wᵀ Ω w` bound
//! `<f, W f>` over two connected intervals.
//!
//! `Ω_B(α)` is the (non-convex in `α`) Bessel-based matrix; `Ω_1 … Ω_5` are
//! lower bounds of `Ω_B` that are affine or polynomial in `α`.

use nalgebra::DMatrix;

use super::geometry::{SplitGeometry, WeightLadder};
use crate::error::{Error, Result};
use crate::linalg::{self, PsdCertificate};

/// Closest admissible distance of `α` to 0 or 1 for `Ω_B` and `Ω_F`.
pub const ALPHA_MIN: f64 = 1e-6;

/// Tolerance of the endpoint feasibility test.
pub const FEASIBILITY_TOL: f64 = 1e-8;

/// Free parameters of each convexifying variant.
#[derive(Debug, Clone, PartialEq)]
pub enum OmegaParams {
    /// `V_1, V_2 ∈ R^{M_2×M_1}`
    Mlsr { v1: DMatrix<f64>, v2: DMatrix<f64> },
    /// `X_1, X_2` symmetric, `Y_1, Y_2 ∈ R^{M_1×M_1}`
    Erc {
        x1: DMatrix<f64>,
        x2: DMatrix<f64>,
        y1: DMatrix<f64>,
        y2: DMatrix<f64>,
    },
    Serc { y1: DMatrix<f64>, y2: DMatrix<f64> },
    Merc { y: DMatrix<f64> },
    Rcc { y: DMatrix<f64> },
    /// `N̂^1, N̂^2 ∈ R^{M_2×M_1}`
    Fmb { n1: DMatrix<f64>, n2: DMatrix<f64> },
}

impl OmegaParams {
    pub fn name(&self) -> &'static str {
        match self {
            OmegaParams::Mlsr { .. } => "M-LSR",
            OmegaParams::Erc { .. } => "ERC",
            OmegaParams::Serc { .. } => "SERC",
            OmegaParams::Merc { .. } => "MERC",
            OmegaParams::Rcc { .. } => "RCC",
            OmegaParams::Fmb { .. } => "DS-FMB",
        }
    }

    /// `Ω(α)` for this variant; `Fmb` needs the full geometry.
    pub fn omega(&self, g: &SplitGeometry, ladder: &WeightLadder) -> Result<DMatrix<f64>> {
        let alpha = g.alpha;
        match self {
            OmegaParams::Mlsr { v1, v2 } => omega_mlsr(alpha, v1, v2, ladder),
            OmegaParams::Erc { x1, x2, y1, y2 } => omega_erc(alpha, x1, x2, y1, y2, ladder),
            OmegaParams::Serc { y1, y2 } => omega_serc(alpha, y1, y2, ladder),
            OmegaParams::Merc { y } => omega_merc(alpha, y, ladder),
            OmegaParams::Rcc { y } => omega_rcc(y, ladder),
            OmegaParams::Fmb { n1, n2 } => omega_f(g, n1, n2, ladder),
        }
    }
}

fn check_alpha_open(alpha: f64) -> Result<()> {
    if !(ALPHA_MIN..=1.0 - ALPHA_MIN).contains(&alpha) {
        return Err(Error::AlphaOutOfRange(alpha));
    }
    Ok(())
}

fn check_alpha_closed(alpha: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::AlphaOutOfRange(alpha));
    }
    Ok(())
}

fn check_shape(name: &str, m: &DMatrix<f64>, rows: usize, cols: usize) -> Result<()> {
    if m.nrows() != rows || m.ncols() != cols {
        return Err(Error::DimensionMismatch(format!(
            "{name} is {}x{}, expected {rows}x{cols}",
            m.nrows(),
            m.ncols()
        )));
    }
    Ok(())
}

/// `[A 0]` (left) or `[0 A]` (right) for `A ∈ R^{M_2×M_1}`.
fn place(a: &DMatrix<f64>, right: bool) -> DMatrix<f64> {
    let m1 = a.ncols();
    let mut out = DMatrix::zeros(a.nrows(), 2 * m1);
    out.columns_mut(if right { m1 } else { 0 }, m1).copy_from(a);
    out
}

/// `Ω_B(α) = diag(𝒲/α, 𝒲/β)`.
pub fn omega_b(g: &SplitGeometry, ladder: &WeightLadder) -> Result<DMatrix<f64>> {
    check_alpha_open(g.alpha)?;
    let w = ladder.matrix();
    Ok(linalg::block_diag(&[&(w / g.alpha), &(w / g.beta)]))
}

/// `Ω_F(α, N̂¹, N̂²) = He([−hN̂¹ 0] + [0 −hN̂²]) − α h² N̂¹𝒲⁻¹N̂¹ᵀ − β h² N̂²𝒲⁻¹N̂²ᵀ`,
/// the sum of the two simplified free-matrix estimates over `D_1`, `D_2`
/// scaled by `h`.
pub fn omega_f(
    g: &SplitGeometry,
    n1: &DMatrix<f64>,
    n2: &DMatrix<f64>,
    ladder: &WeightLadder,
) -> Result<DMatrix<f64>> {
    check_alpha_open(g.alpha)?;
    let m1 = ladder.size();
    check_shape("N1", n1, 2 * m1, m1)?;
    check_shape("N2", n2, 2 * m1, m1)?;
    let h = g.h;
    let winv = ladder.inverse();
    let linear = linalg::he(&(place(n1, false) * -h + place(n2, true) * -h));
    let q1 = n1 * winv * n1.transpose() * (g.alpha * h * h);
    let q2 = n2 * winv * n2.transpose() * (g.beta * h * h);
    Ok(linalg::symmetrize(&(linear - q1 - q2)))
}

/// M-LSR: `Ω_1 = He([V_1 0] + [0 V_2]) − α V_1𝒲⁻¹V_1ᵀ − β V_2𝒲⁻¹V_2ᵀ`.
pub fn omega_mlsr(
    alpha: f64,
    v1: &DMatrix<f64>,
    v2: &DMatrix<f64>,
    ladder: &WeightLadder,
) -> Result<DMatrix<f64>> {
    check_alpha_closed(alpha)?;
    let m1 = ladder.size();
    check_shape("V1", v1, 2 * m1, m1)?;
    check_shape("V2", v2, 2 * m1, m1)?;
    let beta = 1.0 - alpha;
    let winv = ladder.inverse();
    let linear = linalg::he(&(place(v1, false) + place(v2, true)));
    let q1 = v1 * winv * v1.transpose() * alpha;
    let q2 = v2 * winv * v2.transpose() * beta;
    Ok(linalg::symmetrize(&(linear - q1 - q2)))
}

/// Endpoint certificates of
/// `diag(𝒲, 𝒲) − α[[X_1, Y_1], [Y_1ᵀ, 0]] − β[[0, Y_2], [Y_2ᵀ, X_2]] ⪰ 0`
/// at `α = 0` and `α = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErcCertificate {
    pub at_zero: PsdCertificate,
    pub at_one: PsdCertificate,
    pub passed: bool,
}

impl ErcCertificate {
    pub fn min_eigenvalue(&self) -> f64 {
        self.at_zero.min_eigenvalue.min(self.at_one.min_eigenvalue)
    }
}

/// The feasibility matrix above at an arbitrary `α`.
pub fn erc_condition_matrix(
    alpha: f64,
    x1: &DMatrix<f64>,
    x2: &DMatrix<f64>,
    y1: &DMatrix<f64>,
    y2: &DMatrix<f64>,
    ladder: &WeightLadder,
) -> Result<DMatrix<f64>> {
    let m1 = ladder.size();
    for (name, m) in [("X1", x1), ("X2", x2), ("Y1", y1), ("Y2", y2)] {
        check_shape(name, m, m1, m1)?;
    }
    let beta = 1.0 - alpha;
    let w = ladder.matrix();
    let top = w - x1 * alpha;
    let off = -(y1 * alpha + y2 * beta);
    let bottom = w - x2 * beta;
    Ok(linalg::block_sym2(&top, &off, &bottom))
}

/// Endpoint feasibility; by affineness in `α` it certifies every `α ∈ [0, 1]`.
pub fn erc_feasible(
    x1: &DMatrix<f64>,
    x2: &DMatrix<f64>,
    y1: &DMatrix<f64>,
    y2: &DMatrix<f64>,
    ladder: &WeightLadder,
    tol: f64,
) -> Result<ErcCertificate> {
    let at_zero = linalg::psd_check(
        &linalg::symmetrize(&erc_condition_matrix(0.0, x1, x2, y1, y2, ladder)?),
        tol,
    )?;
    let at_one = linalg::psd_check(
        &linalg::symmetrize(&erc_condition_matrix(1.0, x1, x2, y1, y2, ladder)?),
        tol,
    )?;
    Ok(ErcCertificate {
        at_zero,
        at_one,
        passed: at_zero.passed && at_one.passed,
    })
}

/// Feasibility of an RCC matrix `Y` (endpoint test with `X = 0`, `Y_1 = Y_2 = Y`).
pub fn rcc_feasible(y: &DMatrix<f64>, ladder: &WeightLadder, tol: f64) -> Result<ErcCertificate> {
    let zero = DMatrix::zeros(ladder.size(), ladder.size());
    erc_feasible(&zero, &zero, y, y, ladder, tol)
}

fn erc_block(
    alpha: f64,
    x1: &DMatrix<f64>,
    x2: &DMatrix<f64>,
    y1: &DMatrix<f64>,
    y2: &DMatrix<f64>,
    ladder: &WeightLadder,
) -> DMatrix<f64> {
    let beta = 1.0 - alpha;
    let w = ladder.matrix();
    let top = w + x1 * beta;
    let off = y1 * alpha + y2 * beta;
    let bottom = w + x2 * alpha;
    linalg::symmetrize(&linalg::block_sym2(&top, &off, &bottom))
}

/// ERC: `Ω_2 = [[𝒲 + βX_1, αY_1 + βY_2], [∗, 𝒲 + αX_2]]`; the parameters must
/// pass [`erc_feasible`].
pub fn omega_erc(
    alpha: f64,
    x1: &DMatrix<f64>,
    x2: &DMatrix<f64>,
    y1: &DMatrix<f64>,
    y2: &DMatrix<f64>,
    ladder: &WeightLadder,
) -> Result<DMatrix<f64>> {
    check_alpha_closed(alpha)?;
    let cert = erc_feasible(x1, x2, y1, y2, ladder, FEASIBILITY_TOL)?;
    if !cert.passed {
        return Err(Error::InfeasibleParams {
            min_eigenvalue: cert.min_eigenvalue(),
        });
    }
    Ok(erc_block(alpha, x1, x2, y1, y2, ladder))
}

/// `X̂_1 = 𝒲 − Y_1𝒲⁻¹Y_1ᵀ`, `X̂_2 = 𝒲 − Y_2ᵀ𝒲⁻¹Y_2`: the largest `X`'s the
/// endpoint condition admits for given `Y`'s.
pub fn serc_boundary(
    y1: &DMatrix<f64>,
    y2: &DMatrix<f64>,
    ladder: &WeightLadder,
) -> Result<(DMatrix<f64>, DMatrix<f64>)> {
    let m1 = ladder.size();
    check_shape("Y1", y1, m1, m1)?;
    check_shape("Y2", y2, m1, m1)?;
    let (w, winv) = (ladder.matrix(), ladder.inverse());
    let x1 = linalg::symmetrize(&(w - y1 * winv * y1.transpose()));
    let x2 = linalg::symmetrize(&(w - y2.transpose() * winv * y2));
    Ok((x1, x2))
}

/// SERC: `Ω_3 = [[𝒲 + βX̂_1, αY_1 + βY_2], [∗, 𝒲 + αX̂_2]]`.
pub fn omega_serc(
    alpha: f64,
    y1: &DMatrix<f64>,
    y2: &DMatrix<f64>,
    ladder: &WeightLadder,
) -> Result<DMatrix<f64>> {
    check_alpha_closed(alpha)?;
    let (x1, x2) = serc_boundary(y1, y2, ladder)?;
    Ok(erc_block(alpha, &x1, &x2, y1, y2, ladder))
}

/// MERC: `Ω_4 = [[𝒲 + βX̄_1, Y], [∗, 𝒲 + αX̄_2]]` with
/// `X̄_1 = 𝒲 − Y𝒲⁻¹Yᵀ`, `X̄_2 = 𝒲 − Yᵀ𝒲⁻¹Y`.
pub fn omega_merc(alpha: f64, y: &DMatrix<f64>, ladder: &WeightLadder) -> Result<DMatrix<f64>> {
    check_alpha_closed(alpha)?;
    let (x1, x2) = serc_boundary(y, y, ladder)?;
    let beta = 1.0 - alpha;
    let w = ladder.matrix();
    Ok(linalg::symmetrize(&linalg::block_sym2(
        &(w + x1 * beta),
        y,
        &(w + x2 * alpha),
    )))
}

/// RCC: `Ω_5 = [[𝒲, Y], [Yᵀ, 𝒲]]`, constant in `α`; `Y` must be RCC-feasible.
pub fn omega_rcc(y: &DMatrix<f64>, ladder: &WeightLadder) -> Result<DMatrix<f64>> {
    let cert = rcc_feasible(y, ladder, FEASIBILITY_TOL)?;
    if !cert.passed {
        return Err(Error::InfeasibleParams {
            min_eigenvalue: cert.min_eigenvalue(),
        });
    }
    let w = ladder.matrix();
    Ok(linalg::block_sym2(w, y, w))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ladder1() -> WeightLadder {
        WeightLadder::new(&DMatrix::identity(1, 1), 0).unwrap()
    }

    fn ladder2() -> WeightLadder {
        let w = DMatrix::from_row_slice(2, 2, &[2.0, 0.5, 0.5, 1.0]);
        WeightLadder::new(&w, 1).unwrap()
    }

    fn diag2(a: f64, b: f64) -> DMatrix<f64> {
        DMatrix::from_row_slice(2, 2, &[a, 0.0, 0.0, b])
    }

    #[test]
    fn omega_b_symmetric_split() {
        let l = ladder2();
        let g = SplitGeometry::from_alpha(1.0, 0.5).unwrap();
        let ob = omega_b(&g, &l).unwrap();
        let w2 = l.matrix() * 2.0;
        assert!(linalg::max_abs_diff(&ob, &linalg::block_diag(&[&w2, &w2])) < 1e-14);
    }

    #[test]
    fn omega_b_quarter_split() {
        let g = SplitGeometry::from_alpha(1.0, 0.25).unwrap();
        let ob = omega_b(&g, &ladder1()).unwrap();
        assert!(linalg::max_abs_diff(&ob, &diag2(4.0, 4.0 / 3.0)) < 1e-14);
    }

    #[test]
    fn omega_b_rejects_endpoint() {
        let g = SplitGeometry {
            h: 1.0,
            h1: 0.0,
            h2: 1.0,
            alpha: 0.0,
            beta: 1.0,
        };
        assert!(matches!(omega_b(&g, &ladder1()), Err(Error::AlphaOutOfRange(_))));
    }

    #[test]
    fn zero_parameters() {
        let l = ladder2();
        let g = SplitGeometry::from_alpha(2.0, 0.3).unwrap();
        let z = DMatrix::zeros(8, 4);
        assert_eq!(linalg::max_abs(&omega_f(&g, &z, &z, &l).unwrap()), 0.0);
        assert_eq!(linalg::max_abs(&omega_mlsr(0.3, &z, &z, &l).unwrap()), 0.0);
    }

    #[test]
    fn erc_feasibility_examples() {
        let l = ladder1();
        let zero = DMatrix::zeros(1, 1);
        let w = l.matrix().clone();
        assert!(erc_feasible(&zero, &zero, &zero, &zero, &l, 1e-10).unwrap().passed);
        let c = erc_feasible(&zero, &zero, &w, &w, &l, 1e-10).unwrap();
        assert!(c.passed);
        assert!(c.min_eigenvalue().abs() < 1e-14);
        let c = erc_feasible(&zero, &zero, &(&w * 2.0), &(&w * 2.0), &l, 1e-10).unwrap();
        assert!(!c.passed);
        assert!((c.min_eigenvalue() + 1.0).abs() < 1e-14);
    }

    #[test]
    fn erc_with_zero_parameters_is_block_diagonal() {
        let l = ladder2();
        let z = DMatrix::zeros(4, 4);
        let o = omega_erc(0.3, &z, &z, &z, &z, &l).unwrap();
        let expect = linalg::block_diag(&[l.matrix(), l.matrix()]);
        assert!(linalg::max_abs_diff(&o, &expect) < 1e-14);
    }

    #[test]
    fn erc_at_half_with_equal_y_is_rcc() {
        let l = ladder2();
        let z = DMatrix::zeros(4, 4);
        let y = l.matrix() * 0.3;
        let erc = omega_erc(0.5, &z, &z, &y, &y, &l).unwrap();
        let rcc = omega_rcc(&y, &l).unwrap();
        assert!(linalg::max_abs_diff(&erc, &rcc) < 1e-14);
    }

    #[test]
    fn infeasible_erc_is_rejected() {
        let l = ladder1();
        let zero = DMatrix::zeros(1, 1);
        let y = DMatrix::from_element(1, 1, 2.0);
        assert!(matches!(
            omega_erc(0.5, &zero, &zero, &y, &y, &l),
            Err(Error::InfeasibleParams { .. })
        ));
        assert!(matches!(omega_rcc(&y, &l), Err(Error::InfeasibleParams { .. })));
    }

    #[test]
    fn serc_with_zero_y() {
        let l = ladder2();
        let z = DMatrix::zeros(4, 4);
        let (a, b) = (0.3, 0.7);
        let o = omega_serc(a, &z, &z, &l).unwrap();
        let expect = linalg::block_diag(&[&(l.matrix() * (1.0 + b)), &(l.matrix() * (1.0 + a))]);
        assert!(linalg::max_abs_diff(&o, &expect) < 1e-14);
        let m = omega_merc(a, &z, &l).unwrap();
        assert!(linalg::max_abs_diff(&m, &expect) < 1e-14);
    }

    #[test]
    fn serc_with_equal_y_is_merc() {
        let l = ladder2();
        let y = DMatrix::from_fn(4, 4, |i, j| ((i * 4 + j) as f64 * 0.37).sin());
        for a in [0.0, 0.2, 0.9, 1.0] {
            let s = omega_serc(a, &y, &y, &l).unwrap();
            let m = omega_merc(a, &y, &l).unwrap();
            assert!(linalg::max_abs_diff(&s, &m) < 1e-13);
        }
    }

    #[test]
    fn merc_with_ladder_cancels() {
        let l = ladder2();
        let y = l.matrix().clone();
        let m = omega_merc(0.4, &y, &l).unwrap();
        let expect = linalg::block_sym2(&y, &y, &y);
        assert!(linalg::max_abs_diff(&m, &expect) < 1e-13);
        let r = omega_rcc(&y, &l).unwrap();
        assert!(linalg::max_abs_diff(&m, &r) < 1e-13);
    }

    #[test]
    fn rcc_zero_y_relation_e() {
        let l = ladder2();
        let z = DMatrix::zeros(4, 4);
        let (a, b) = (0.35, 0.65);
        let diff = omega_merc(a, &z, &l).unwrap() - omega_rcc(&z, &l).unwrap();
        let expect = linalg::block_diag(&[&(l.matrix() * b), &(l.matrix() * a)]);
        assert!(linalg::max_abs_diff(&diff, &expect) < 1e-14);
        assert!(linalg::psd_check(&diff, 1e-12).unwrap().passed);
    }

    #[test]
    fn shapes_are_checked() {
        let l = ladder2();
        let bad = DMatrix::zeros(3, 4);
        let ok = DMatrix::zeros(8, 4);
        assert!(matches!(
            omega_mlsr(0.5, &bad, &ok, &l),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(omega_serc(0.5, &bad, &bad, &l).is_err());
        assert!(matches!(omega_mlsr(1.5, &ok, &ok, &l), Err(Error::AlphaOutOfRange(_))));
    }
}

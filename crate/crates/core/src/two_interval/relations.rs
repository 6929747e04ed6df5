//! Executable forms of the five relations between the DS-FMB condition, the
//! DBBI condition and its convexified variants.

use nalgebra::DMatrix;
use serde::Serialize;

use super::geometry::{SplitGeometry, WeightLadder};
use super::omega::{
    omega_erc, omega_f, omega_merc, omega_mlsr, omega_rcc, omega_serc, serc_boundary,
};
use super::search::{counterexample_search, SearchKind, SearchOptions, Witness};
use crate::error::Result;
use crate::linalg::{self, PsdCertificate};

/// Elementwise tolerance of the relation (A) identity.
pub const IDENTITY_TOL: f64 = 1e-12;
/// Tolerance of the boundary equality in relation (C).
pub const BOUNDARY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Relation {
    A,
    B,
    C,
    D,
    E,
}

/// Parameters of one relation check.
#[derive(Debug, Clone, PartialEq)]
pub enum RelationCase {
    /// `Ω_F(α, N̂¹, N̂²) = Ω_1(α, −hN̂¹, −hN̂²)`, and the same pair read as `V`'s
    /// against `Ω_F(α, −V_1/h, −V_2/h)`.
    A { n1: DMatrix<f64>, n2: DMatrix<f64> },
    /// `Ω_1(α, [𝒲; Y_2ᵀ], [Y_1; 𝒲]) = Ω_3(α, Y_1, Y_2)`.
    BForward { y1: DMatrix<f64>, y2: DMatrix<f64> },
    /// Counterexample to `Ω_1 ⪯ Ω_3` or `Ω_3 ⪯ Ω_1`.
    BReverse(SearchOptions),
    /// `Ω_2 ⪯ Ω_3` for feasible `X`'s, with equality at the boundary `X`'s.
    C {
        x1: DMatrix<f64>,
        x2: DMatrix<f64>,
        y1: DMatrix<f64>,
        y2: DMatrix<f64>,
    },
    /// `Ω_3(α, Y, Y) = Ω_4(α, Y)`.
    DForward { y: DMatrix<f64> },
    /// Counterexample to `Ω_3 ⪯ Ω_4` or `Ω_4 ⪯ Ω_3`.
    DReverse(SearchOptions),
    /// `Ω_5(Y) ⪯ Ω_4(α, Y)` for RCC-feasible `Y`.
    E { y: DMatrix<f64> },
}

impl RelationCase {
    pub fn relation(&self) -> Relation {
        match self {
            RelationCase::A { .. } => Relation::A,
            RelationCase::BForward { .. } | RelationCase::BReverse(_) => Relation::B,
            RelationCase::C { .. } => Relation::C,
            RelationCase::DForward { .. } | RelationCase::DReverse(_) => Relation::D,
            RelationCase::E { .. } => Relation::E,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RelationReport {
    pub relation: Relation,
    /// Largest elementwise residual of an identity, scaled by `max(1, |Ω|)`.
    pub identity_residual: Option<f64>,
    /// PSD certificate of a difference that must be `⪰ 0`.
    pub psd: Option<PsdCertificate>,
    pub witness: Option<Witness>,
    pub passed: bool,
}

impl RelationReport {
    fn identity(relation: Relation, residual: f64, tol: f64) -> Self {
        Self {
            relation,
            identity_residual: Some(residual),
            psd: None,
            witness: None,
            passed: residual <= tol,
        }
    }
}

fn scaled_residual(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    linalg::max_abs_diff(a, b) / linalg::max_abs(a).max(linalg::max_abs(b)).max(1.0)
}

/// `[A; B]` for two `M_1 × M_1` blocks.
fn stack(top: &DMatrix<f64>, bottom: &DMatrix<f64>) -> DMatrix<f64> {
    let m1 = top.nrows();
    let mut v = DMatrix::zeros(2 * m1, top.ncols());
    v.rows_mut(0, m1).copy_from(top);
    v.rows_mut(m1, m1).copy_from(bottom);
    v
}

/// Residual of `Ω_F(α, N̂¹, N̂²)` against `Ω_1(α, −hN̂¹, −hN̂²)` and of
/// `Ω_1(α, V_1, V_2)` against `Ω_F(α, −V_1/h, −V_2/h)`, with `V_i := N̂^i`.
pub fn relation_a_residual(
    g: &SplitGeometry,
    n1: &DMatrix<f64>,
    n2: &DMatrix<f64>,
    ladder: &WeightLadder,
) -> Result<f64> {
    let forward = scaled_residual(
        &omega_f(g, n1, n2, ladder)?,
        &omega_mlsr(g.alpha, &(n1 * -g.h), &(n2 * -g.h), ladder)?,
    );
    let reverse = scaled_residual(
        &omega_mlsr(g.alpha, n1, n2, ladder)?,
        &omega_f(g, &(n1 / -g.h), &(n2 / -g.h), ladder)?,
    );
    Ok(forward.max(reverse))
}

/// The `V`'s that turn M-LSR into SERC.
pub fn serc_as_mlsr(
    y1: &DMatrix<f64>,
    y2: &DMatrix<f64>,
    ladder: &WeightLadder,
) -> (DMatrix<f64>, DMatrix<f64>) {
    let w = ladder.matrix();
    (stack(w, &y2.transpose()), stack(y1, w))
}

pub fn check_relation(
    case: &RelationCase,
    g: &SplitGeometry,
    ladder: &WeightLadder,
    tol: f64,
) -> Result<RelationReport> {
    let alpha = g.alpha;
    let relation = case.relation();
    Ok(match case {
        RelationCase::A { n1, n2 } => RelationReport::identity(
            relation,
            relation_a_residual(g, n1, n2, ladder)?,
            IDENTITY_TOL,
        ),
        RelationCase::BForward { y1, y2 } => {
            let (v1, v2) = serc_as_mlsr(y1, y2, ladder);
            let r = scaled_residual(
                &omega_mlsr(alpha, &v1, &v2, ladder)?,
                &omega_serc(alpha, y1, y2, ladder)?,
            );
            RelationReport::identity(relation, r, tol)
        }
        RelationCase::DForward { y } => {
            let r = scaled_residual(
                &omega_serc(alpha, y, y, ladder)?,
                &omega_merc(alpha, y, ladder)?,
            );
            RelationReport::identity(relation, r, tol)
        }
        RelationCase::BReverse(opts) | RelationCase::DReverse(opts) => {
            let kind = if relation == Relation::B {
                SearchKind::B
            } else {
                SearchKind::D
            };
            let witness = counterexample_search(kind, ladder, opts)?;
            RelationReport {
                relation,
                identity_residual: None,
                psd: None,
                witness: Some(witness),
                passed: true,
            }
        }
        RelationCase::C { x1, x2, y1, y2 } => {
            let o3 = omega_serc(alpha, y1, y2, ladder)?;
            let o2 = omega_erc(alpha, x1, x2, y1, y2, ladder)?;
            let cert = linalg::psd_check(&linalg::symmetrize(&(&o3 - o2)), tol)?;
            let (bx1, bx2) = serc_boundary(y1, y2, ladder)?;
            let boundary = omega_erc(alpha, &bx1, &bx2, y1, y2, ladder)?;
            let r = scaled_residual(&boundary, &o3);
            RelationReport {
                relation,
                identity_residual: Some(r),
                psd: Some(cert),
                witness: None,
                passed: cert.passed && r <= BOUNDARY_TOL,
            }
        }
        RelationCase::E { y } => {
            let diff = omega_merc(alpha, y, ladder)? - omega_rcc(y, ladder)?;
            let cert = linalg::psd_check(&linalg::symmetrize(&diff), tol)?;
            RelationReport {
                relation,
                identity_residual: None,
                psd: Some(cert),
                witness: None,
                passed: cert.passed,
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn ladder() -> WeightLadder {
        let w = DMatrix::from_row_slice(2, 2, &[2.0, 0.5, 0.5, 1.0]);
        WeightLadder::new(&w, 1).unwrap()
    }

    fn wavy(rows: usize, cols: usize, phase: f64) -> DMatrix<f64> {
        DMatrix::from_fn(rows, cols, |i, j| ((i * cols + j) as f64 * 0.7 + phase).sin())
    }

    #[test]
    fn a_with_zero_parameters() {
        let l = ladder();
        let g = SplitGeometry::from_alpha(2.0, 0.4).unwrap();
        let z = DMatrix::zeros(8, 4);
        let r = check_relation(&RelationCase::A { n1: z.clone(), n2: z }, &g, &l, 1e-8).unwrap();
        assert!(r.passed);
        assert_eq!(r.identity_residual, Some(0.0));
    }

    #[test]
    fn a_with_generic_parameters() {
        let l = ladder();
        let g = SplitGeometry::new(-1.0, 0.3, 2.5).unwrap();
        let case = RelationCase::A {
            n1: wavy(8, 4, 0.1),
            n2: wavy(8, 4, 1.3),
        };
        let r = check_relation(&case, &g, &l, 1e-8).unwrap();
        assert!(r.passed, "{:?}", r.identity_residual);
    }

    #[test]
    fn b_and_d_forward() {
        let l = ladder();
        let g = SplitGeometry::from_alpha(1.0, 0.7).unwrap();
        let y1 = wavy(4, 4, 0.2);
        let y2 = wavy(4, 4, 2.2);
        let b = RelationCase::BForward { y1: y1.clone(), y2 };
        assert!(check_relation(&b, &g, &l, 1e-12).unwrap().passed);
        let d = RelationCase::DForward { y: y1 };
        assert!(check_relation(&d, &g, &l, 1e-12).unwrap().passed);
    }

    #[test]
    fn c_with_slack() {
        let l = ladder();
        let g = SplitGeometry::from_alpha(1.0, 0.25).unwrap();
        let y1 = wavy(4, 4, 0.5) * 0.5;
        let y2 = wavy(4, 4, 1.5) * 0.5;
        let (bx1, bx2) = serc_boundary(&y1, &y2, &l).unwrap();
        let case = RelationCase::C {
            x1: &bx1 - DMatrix::identity(4, 4) * 0.3,
            x2: bx2,
            y1,
            y2,
        };
        let r = check_relation(&case, &g, &l, 1e-8).unwrap();
        assert!(r.passed);
        assert!(r.psd.unwrap().min_eigenvalue >= -1e-12);
    }

    #[test]
    fn e_with_zero_y() {
        let l = ladder();
        let g = SplitGeometry::from_alpha(1.0, 0.35).unwrap();
        let r = check_relation(&RelationCase::E { y: DMatrix::zeros(4, 4) }, &g, &l, 1e-8).unwrap();
        assert!(r.passed);
        // diag(0.65 𝒲, 0.35 𝒲): smallest eigenvalue is 0.35 λ_min(W)
        let wmin = (1.5 - (0.5f64 * 0.5 + 0.25).sqrt()).min(1.5 + 0.5f64.sqrt());
        assert!((r.psd.unwrap().min_eigenvalue - 0.35 * wmin).abs() < 1e-12);
    }

    #[test]
    fn reverse_budget_zero() {
        let l = ladder();
        let g = SplitGeometry::from_alpha(1.0, 0.5).unwrap();
        let opts = SearchOptions {
            budget: 0,
            ..SearchOptions::default()
        };
        assert!(matches!(
            check_relation(&RelationCase::DReverse(opts), &g, &l, 1e-8),
            Err(Error::BudgetExhausted { .. })
        ));
    }
}

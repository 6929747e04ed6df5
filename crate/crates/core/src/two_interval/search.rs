//! Randomized searches for witnesses that the SERC and MERC reductions are
//! strict: some M-LSR matrix is not comparable with any SERC matrix, and some
//! SERC matrix is not comparable with any MERC matrix.
//!
//! "Any" can only be checked on a finite sweep of the competing parameters;
//! the sweep mixes random draws with hand-picked adversarial choices.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::geometry::WeightLadder;
use super::omega::{omega_merc, omega_mlsr, omega_serc};
use crate::error::{Error, Result};
use crate::linalg;
use crate::verification::sampling::{
    ladder_scale, random_psd, trial_rng, uniform_matrix,
};

/// Smallest quadratic-form magnitude accepted as a sign witness.
pub const WITNESS_MARGIN: f64 = 1e-6;

const DELTA_START: f64 = 1e-3;
const DELTA_FLOOR: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SearchKind {
    /// `Ω_1(α, V_1, V_2) − Ω_3(α, Y_1, Y_2)` indefinite for every swept `(Y_1, Y_2)`.
    B,
    /// `Ω_3(1, Y_1, Y_2) − Ω_4(1, Y)` indefinite for every swept `Y`.
    D,
}

impl std::str::FromStr for SearchKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "B" | "b" => Ok(SearchKind::B),
            "D" | "d" => Ok(SearchKind::D),
            other => Err(Error::InvalidConfig(format!("unknown search kind {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchOptions {
    pub seed: u64,
    /// Number of parameter draws before giving up.
    pub budget: u64,
    /// Random competitors per draw, on top of the fixed adversarial ones.
    pub sweep: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            seed: 7,
            budget: 10_000,
            sweep: 50,
        }
    }
}

/// A found counterexample. Matrices are stored row by row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub kind: SearchKind,
    pub seed: u64,
    pub trial: u64,
    pub alpha: f64,
    /// `V_1, V_2` for B, `Y_1, Y_2` for D.
    pub first: Vec<Vec<f64>>,
    pub second: Vec<Vec<f64>>,
    /// Vector with a negative form, for the worst swept competitor.
    pub negative_vector: Vec<f64>,
    /// Vector with a positive form, for the worst swept competitor.
    pub positive_vector: Vec<f64>,
    /// Largest negative-side value over the sweep (still `≤ −margin`).
    pub worst_negative: f64,
    /// Smallest positive-side value over the sweep (still `≥ margin`).
    pub worst_positive: f64,
    pub competitors: usize,
}

pub(crate) fn rows(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    m.row_iter().map(|r| r.iter().copied().collect()).collect()
}

/// Runs the search; `BudgetExhausted` if no draw survives the whole sweep.
pub fn counterexample_search(
    kind: SearchKind,
    ladder: &WeightLadder,
    opts: &SearchOptions,
) -> Result<Witness> {
    for trial in 0..opts.budget {
        let found = match kind {
            SearchKind::B => try_b(ladder, opts, trial)?,
            SearchKind::D => try_d(ladder, opts, trial)?,
        };
        if let Some(w) = found {
            return Ok(w);
        }
    }
    Err(Error::BudgetExhausted {
        trials: opts.budget,
    })
}

fn top_eigenvector(a: &DMatrix<f64>) -> DVector<f64> {
    let eig = linalg::symmetric_eigen(a);
    let i = eig.eigenvalues.imax();
    eig.eigenvectors.column(i).into_owned()
}

fn try_b(ladder: &WeightLadder, opts: &SearchOptions, trial: u64) -> Result<Option<Witness>> {
    let mut rng = trial_rng(opts.seed, trial);
    let m1 = ladder.size();
    let s = ladder_scale(ladder);
    let (w, winv) = (ladder.matrix(), ladder.inverse());

    let xi1 = uniform_matrix(&mut rng, m1, m1, s);
    let v12 = uniform_matrix(&mut rng, m1, m1, s);
    let v21 = uniform_matrix(&mut rng, m1, m1, s);
    let p = random_psd(&mut rng, m1, 1e-3) * s;
    let skew = {
        let k = uniform_matrix(&mut rng, m1, m1, s);
        (&k - k.transpose()) * 0.5
    };
    // He(Ξ_2) − V_12𝒲⁻¹V_12ᵀ = P ≻ 0
    let xi2 = (&v12 * winv * v12.transpose() + &p) * 0.5 + skew;

    let stack = |top: &DMatrix<f64>, bottom: &DMatrix<f64>| {
        let mut v = DMatrix::zeros(2 * m1, m1);
        v.rows_mut(0, m1).copy_from(top);
        v.rows_mut(m1, m1).copy_from(bottom);
        v
    };
    let v1 = stack(&(w + &xi1), &v12);
    let v2 = stack(&v21, &(w + &xi2));

    let mut y_neg = DVector::zeros(2 * m1);
    y_neg
        .rows_mut(0, m1)
        .copy_from(&top_eigenvector(&(&xi1 * winv * xi1.transpose())));
    let mut y_pos = DVector::zeros(2 * m1);
    y_pos.rows_mut(m1, m1).copy_from(&top_eigenvector(&p));

    let mut competitors = vec![
        (DMatrix::zeros(m1, m1), DMatrix::zeros(m1, m1)),
        (w.clone(), w.clone()),
        (v21.clone(), v12.transpose()),
    ];
    for _ in 0..opts.sweep {
        competitors.push((
            uniform_matrix(&mut rng, m1, m1, s),
            uniform_matrix(&mut rng, m1, m1, s),
        ));
    }

    let mut delta = DELTA_START;
    while delta >= DELTA_FLOOR {
        let alpha = 1.0 - delta;
        let o1 = omega_mlsr(alpha, &v1, &v2, ladder)?;
        let mut worst_neg = f64::NEG_INFINITY;
        let mut worst_pos = f64::INFINITY;
        for (y1, y2) in &competitors {
            let diff = &o1 - omega_serc(alpha, y1, y2, ladder)?;
            worst_neg = worst_neg.max(linalg::quad(&y_neg, &diff, &y_neg));
            worst_pos = worst_pos.min(linalg::quad(&y_pos, &diff, &y_pos));
            if worst_neg > -WITNESS_MARGIN || worst_pos < WITNESS_MARGIN {
                break;
            }
        }
        if worst_neg <= -WITNESS_MARGIN && worst_pos >= WITNESS_MARGIN {
            return Ok(Some(Witness {
                kind: SearchKind::B,
                seed: opts.seed,
                trial,
                alpha,
                first: rows(&v1),
                second: rows(&v2),
                negative_vector: y_neg.iter().copied().collect(),
                positive_vector: y_pos.iter().copied().collect(),
                worst_negative: worst_neg,
                worst_positive: worst_pos,
                competitors: competitors.len(),
            }));
        }
        delta *= 0.5;
    }
    Ok(None)
}

fn try_d(ladder: &WeightLadder, opts: &SearchOptions, trial: u64) -> Result<Option<Witness>> {
    let mut rng = trial_rng(opts.seed, trial);
    let m1 = ladder.size();
    let s = ladder_scale(ladder);
    let w = ladder.matrix();

    let y1 = uniform_matrix(&mut rng, m1, m1, s);
    let y2 = uniform_matrix(&mut rng, m1, m1, s);
    let o3 = omega_serc(1.0, &y1, &y2, ladder)?;

    let mut competitors = vec![
        DMatrix::zeros(m1, m1),
        w.clone(),
        -w.clone(),
        y2.clone(),
        (&y1 + &y2) * 0.5,
    ];
    for _ in 0..opts.sweep {
        let scale = s * rng.gen_range(0.1..=2.0);
        competitors.push(uniform_matrix(&mut rng, m1, m1, scale));
    }

    let mut worst_neg = f64::NEG_INFINITY;
    let mut worst_pos = f64::INFINITY;
    let mut neg_vec = DVector::zeros(2 * m1);
    let mut pos_vec = DVector::zeros(2 * m1);
    for y in &competitors {
        let diff = linalg::symmetrize(&(&o3 - omega_merc(1.0, y, ladder)?));
        let eig = linalg::symmetric_eigen(&diff);
        let (imin, imax) = (eig.eigenvalues.imin(), eig.eigenvalues.imax());
        let (lo, hi) = (eig.eigenvalues[imin], eig.eigenvalues[imax]);
        if lo > worst_neg {
            worst_neg = lo;
            neg_vec = eig.eigenvectors.column(imin).into_owned();
        }
        if hi < worst_pos {
            worst_pos = hi;
            pos_vec = eig.eigenvectors.column(imax).into_owned();
        }
        if worst_neg > -WITNESS_MARGIN || worst_pos < WITNESS_MARGIN {
            return Ok(None);
        }
    }
    Ok(Some(Witness {
        kind: SearchKind::D,
        seed: opts.seed,
        trial,
        alpha: 1.0,
        first: rows(&y1),
        second: rows(&y2),
        negative_vector: neg_vec.iter().copied().collect(),
        positive_vector: pos_vec.iter().copied().collect(),
        worst_negative: worst_neg,
        worst_positive: worst_pos,
        competitors: competitors.len(),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scalar_ladder() -> WeightLadder {
        WeightLadder::new(&DMatrix::identity(1, 1), 0).unwrap()
    }

    #[test]
    fn b_witness_scalar() {
        let opts = SearchOptions::default();
        let w = counterexample_search(SearchKind::B, &scalar_ladder(), &opts).unwrap();
        assert!(w.worst_negative <= -WITNESS_MARGIN);
        assert!(w.worst_positive >= WITNESS_MARGIN);
        assert!(w.alpha > 1.0 - DELTA_START - 1e-15 && w.alpha < 1.0);
    }

    #[test]
    fn d_witness_scalar() {
        let opts = SearchOptions::default();
        let w = counterexample_search(SearchKind::D, &scalar_ladder(), &opts).unwrap();
        assert!(w.worst_negative <= -WITNESS_MARGIN);
        assert!(w.worst_positive >= WITNESS_MARGIN);
        assert_eq!(w.alpha, 1.0);
    }

    #[test]
    fn zero_budget_exhausts() {
        let opts = SearchOptions {
            budget: 0,
            ..SearchOptions::default()
        };
        assert!(matches!(
            counterexample_search(SearchKind::B, &scalar_ladder(), &opts),
            Err(Error::BudgetExhausted { trials: 0 })
        ));
    }

    #[test]
    fn witness_recheck() {
        let l = scalar_ladder();
        let w = counterexample_search(SearchKind::B, &l, &SearchOptions::default()).unwrap();
        let v1 = DMatrix::from_row_slice(2, 1, &[w.first[0][0], w.first[1][0]]);
        let v2 = DMatrix::from_row_slice(2, 1, &[w.second[0][0], w.second[1][0]]);
        let o1 = omega_mlsr(w.alpha, &v1, &v2, &l).unwrap();
        let z = DMatrix::zeros(1, 1);
        let diff = o1 - omega_serc(w.alpha, &z, &z, &l).unwrap();
        let yn = DVector::from_vec(w.negative_vector.clone());
        let yp = DVector::from_vec(w.positive_vector.clone());
        assert!(linalg::quad(&yn, &diff, &yn) <= -WITNESS_MARGIN);
        assert!(linalg::quad(&yp, &diff, &yp) >= WITNESS_MARGIN);
    }
}

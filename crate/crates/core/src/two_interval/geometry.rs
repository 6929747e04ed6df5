use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::linalg;

/// Lengths of `[a, b]` split at `c`: `h = b − a`, `h_1 = c − a`, `h_2 = b − c`,
/// `α = h_1 / h`, `β = h_2 / h = 1 − α`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitGeometry {
    pub h: f64,
    pub h1: f64,
    pub h2: f64,
    pub alpha: f64,
    pub beta: f64,
}

impl SplitGeometry {
    pub fn new(a: f64, c: f64, b: f64) -> Result<Self> {
        if !(a < c && c < b) || !a.is_finite() || !b.is_finite() {
            return Err(Error::InvalidSplit {
                lower: a,
                upper: b,
                point: c,
            });
        }
        let h = b - a;
        let (h1, h2) = (c - a, b - c);
        Ok(Self {
            h,
            h1,
            h2,
            alpha: h1 / h,
            beta: h2 / h,
        })
    }

    /// Geometry of length `h` with the split at fraction `alpha`.
    pub fn from_alpha(h: f64, alpha: f64) -> Result<Self> {
        if !(h > 0.0) || !h.is_finite() {
            return Err(Error::InvalidInterval(format!("length {h} must be positive")));
        }
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::AlphaOutOfRange(alpha));
        }
        Ok(Self {
            h,
            h1: alpha * h,
            h2: (1.0 - alpha) * h,
            alpha,
            beta: 1.0 - alpha,
        })
    }
}

/// `𝒲 = diag{1, 3, …, 2ν + 1} ⊗ W` and its inverse.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightLadder {
    order: usize,
    weight: DMatrix<f64>,
    ladder: DMatrix<f64>,
    inverse: DMatrix<f64>,
}

impl WeightLadder {
    pub fn new(weight: &DMatrix<f64>, order: usize) -> Result<Self> {
        let winv = linalg::spd_inverse(weight)?;
        let odd: Vec<f64> = (0..=order).map(|j| (2 * j + 1) as f64).collect();
        let odd_inv: Vec<f64> = odd.iter().map(|x| 1.0 / x).collect();
        Ok(Self {
            order,
            weight: weight.clone(),
            ladder: linalg::kron_diag(&odd, weight),
            inverse: linalg::kron_diag(&odd_inv, &winv),
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `n`
    pub fn dim(&self) -> usize {
        self.weight.nrows()
    }

    /// `W`
    pub fn weight(&self) -> &DMatrix<f64> {
        &self.weight
    }

    /// `𝒲`
    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.ladder
    }

    /// `𝒲⁻¹`
    pub fn inverse(&self) -> &DMatrix<f64> {
        &self.inverse
    }

    /// `M_1 = (ν + 1) n`
    pub fn size(&self) -> usize {
        self.ladder.nrows()
    }
}

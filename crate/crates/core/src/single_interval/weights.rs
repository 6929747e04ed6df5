use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::function_spaces::Segment;
use crate::linalg;

/// `𝒲_i = diag{1/ρ_0^i, …, 1/ρ_ν^i} ⊗ W` for one or two subintervals, with
/// inverses and the zero-padded forms `Ŵ_1 = diag(𝒲_1, 0)`, `Ŵ_2 = diag(0, 𝒲_2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightBlockMatrix {
    parts: Vec<DMatrix<f64>>,
    inverses: Vec<DMatrix<f64>>,
}

impl WeightBlockMatrix {
    /// One entry of `norms` per subinterval.
    pub fn new(norms: &[&[f64]], weight: &DMatrix<f64>) -> Result<Self> {
        if norms.is_empty() || norms.len() > 2 {
            return Err(Error::DimensionMismatch("need one or two norm lists".into()));
        }
        if norms.iter().any(|r| r.len() != norms[0].len()) {
            return Err(Error::DimensionMismatch(
                "subinterval norm lists differ in length".into(),
            ));
        }
        if norms.iter().flat_map(|r| r.iter()).any(|r| *r <= 0.0) {
            return Err(Error::NotPositiveDefinite("norm-squares must be positive".into()));
        }
        let weight_inv = linalg::spd_inverse(weight)?;
        let mut parts = Vec::new();
        let mut inverses = Vec::new();
        for rho in norms {
            let recip: Vec<f64> = rho.iter().map(|r| 1.0 / r).collect();
            parts.push(linalg::kron_diag(&recip, weight));
            inverses.push(linalg::kron_diag(rho, &weight_inv));
        }
        Ok(Self { parts, inverses })
    }

    pub fn single(norms: &[f64], weight: &DMatrix<f64>) -> Result<Self> {
        Self::new(&[norms], weight)
    }

    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }

    /// `M_1`
    pub fn part_len(&self) -> usize {
        self.parts[0].nrows()
    }

    /// `𝒲_i`
    pub fn part(&self, seg: Segment) -> Result<&DMatrix<f64>> {
        self.parts
            .get(seg.index())
            .ok_or_else(|| Error::DimensionMismatch(format!("no weight for segment {seg:?}")))
    }

    /// `𝒲_i⁻¹`
    pub fn inverse(&self, seg: Segment) -> Result<&DMatrix<f64>> {
        self.inverses
            .get(seg.index())
            .ok_or_else(|| Error::DimensionMismatch(format!("no weight for segment {seg:?}")))
    }

    /// `Ŵ_i`
    pub fn padded(&self, seg: Segment) -> Result<DMatrix<f64>> {
        self.pad(self.part(seg)?, seg)
    }

    /// `Ŵ_{i−}`
    pub fn padded_inverse(&self, seg: Segment) -> Result<DMatrix<f64>> {
        self.pad(self.inverse(seg)?, seg)
    }

    fn pad(&self, block: &DMatrix<f64>, seg: Segment) -> Result<DMatrix<f64>> {
        let m1 = self.part_len();
        let mut out = DMatrix::zeros(m1 * self.num_parts(), m1 * self.num_parts());
        let at = seg.index() * m1;
        out.view_mut((at, at), (m1, m1)).copy_from(block);
        Ok(out)
    }
}

/// Zero-padded free matrix `N¹ = (N̂¹, 0)` or `N² = (0, N̂²)`.
///
/// For single-interval moment vectors there is no padding and `N = N̂`.
#[derive(Debug, Clone, PartialEq)]
pub struct FreeMatrix {
    matrix: DMatrix<f64>,
    segment: Segment,
    part_len: usize,
}

impl FreeMatrix {
    /// Pads `core ∈ R^{M×M_1}` into the columns of `segment`.
    pub fn padded(core: &DMatrix<f64>, segment: Segment, num_parts: usize) -> Result<Self> {
        if num_parts == 0 || num_parts > 2 || segment.index() >= num_parts {
            return Err(Error::DimensionMismatch(format!(
                "segment {segment:?} not available with {num_parts} parts"
            )));
        }
        let m1 = core.ncols();
        let mut matrix = DMatrix::zeros(core.nrows(), m1 * num_parts);
        matrix
            .columns_mut(segment.index() * m1, m1)
            .copy_from(core);
        Ok(Self {
            matrix,
            segment,
            part_len: m1,
        })
    }

    /// Accepts an already padded matrix; columns outside `segment` must be zero.
    pub fn from_padded(matrix: DMatrix<f64>, segment: Segment, part_len: usize) -> Result<Self> {
        if part_len == 0 || !matrix.ncols().is_multiple_of(part_len) {
            return Err(Error::DimensionMismatch(format!(
                "{} columns is not a multiple of {part_len}",
                matrix.ncols()
            )));
        }
        let parts = matrix.ncols() / part_len;
        if segment.index() >= parts {
            return Err(Error::DimensionMismatch(format!(
                "segment {segment:?} not available with {parts} parts"
            )));
        }
        for p in (0..parts).filter(|p| *p != segment.index()) {
            if matrix.columns(p * part_len, part_len).iter().any(|x| *x != 0.0) {
                return Err(Error::DimensionMismatch(format!(
                    "padding of free matrix does not match segment {segment:?}"
                )));
            }
        }
        Ok(Self {
            matrix,
            segment,
            part_len,
        })
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn segment(&self) -> Segment {
        self.segment
    }

    /// `M`
    pub fn rows(&self) -> usize {
        self.matrix.nrows()
    }

    /// `N̂`, the unpadded columns.
    pub fn core(&self) -> DMatrix<f64> {
        self.matrix
            .columns(self.segment.index() * self.part_len, self.part_len)
            .into_owned()
    }

    pub fn scaled_rows(&self, left: &DMatrix<f64>) -> Self {
        Self {
            matrix: left * &self.matrix,
            segment: self.segment,
            part_len: self.part_len,
        }
    }
}

/// Free vector `χ_i` together with the subinterval it estimates.
#[derive(Debug, Clone, PartialEq)]
pub struct FreeParams {
    pub chi: DVector<f64>,
    pub segment: Segment,
}

impl FreeParams {
    pub fn new(chi: DVector<f64>, segment: Segment) -> Self {
        Self { chi, segment }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_times_inverse_is_identity() {
        let w = DMatrix::from_row_slice(2, 2, &[2.0, 0.5, 0.5, 1.0]);
        let wb = WeightBlockMatrix::new(&[&[1.0, 1.0 / 3.0, 0.2], &[0.5, 0.1, 0.3]], &w).unwrap();
        for seg in [Segment::First, Segment::Second] {
            let prod = wb.part(seg).unwrap() * wb.inverse(seg).unwrap();
            assert!(linalg::max_abs_diff(&prod, &DMatrix::identity(6, 6)) < 1e-10);
            assert!(linalg::psd_check(wb.part(seg).unwrap(), 1e-12).unwrap().min_eigenvalue > 0.0);
        }
        let p = wb.padded(Segment::Second).unwrap();
        assert_eq!(p.nrows(), 12);
        assert_eq!(p[(0, 0)], 0.0);
        assert_eq!(p[(6, 6)], 4.0);
    }

    #[test]
    fn padding_pattern() {
        let core = DMatrix::from_element(3, 2, 1.0);
        let n2 = FreeMatrix::padded(&core, Segment::Second, 2).unwrap();
        assert_eq!(n2.matrix().ncols(), 4);
        assert_eq!(n2.matrix()[(0, 0)], 0.0);
        assert_eq!(n2.matrix()[(0, 3)], 1.0);
        assert_eq!(n2.core(), core);
        assert!(FreeMatrix::from_padded(n2.matrix().clone(), Segment::First, 2).is_err());
        assert!(FreeMatrix::from_padded(n2.matrix().clone(), Segment::Second, 2).is_ok());
        assert!(FreeMatrix::padded(&core, Segment::Second, 1).is_err());
    }
}

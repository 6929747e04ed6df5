use nalgebra::{DMatrix, DVector, DVectorView};

use super::basis::Basis;
use super::poly::VectorPolynomial;
use super::space::Space;
use crate::error::{Error, Result};

/// Which subinterval a single-interval estimate refers to.
///
/// Moment vectors built on one interval only carry [`Segment::First`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Segment {
    First,
    Second,
}

impl Segment {
    pub fn index(self) -> usize {
        match self {
            Segment::First => 0,
            Segment::Second => 1,
        }
    }
}

/// Stacked projections `w = col{w^1, w^2}`, `w^i = col{w_0^i, ..., w_ν^i}`,
/// `w_k^i = <f_i, Π_ki> ∈ R^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentVector {
    order: usize,
    dim: usize,
    parts: Vec<DVector<f64>>,
}

impl MomentVector {
    /// Builds from one or two raw parts of length `(ν + 1) n` each.
    pub fn from_parts(order: usize, dim: usize, parts: Vec<DVector<f64>>) -> Result<Self> {
        let m1 = (order + 1) * dim;
        if parts.is_empty() || parts.len() > 2 || parts.iter().any(|p| p.len() != m1) {
            return Err(Error::DimensionMismatch(format!(
                "expected 1 or 2 moment parts of length {m1}"
            )));
        }
        Ok(Self { order, dim, parts })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `M_1 = (ν + 1) n`
    pub fn part_len(&self) -> usize {
        (self.order + 1) * self.dim
    }

    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }

    /// Length of the stacked vector (`M_1` or `M_2`).
    pub fn len(&self) -> usize {
        self.parts.len() * self.part_len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn parts(&self) -> &[DVector<f64>] {
        &self.parts
    }

    pub fn part(&self, seg: Segment) -> Result<&DVector<f64>> {
        self.parts
            .get(seg.index())
            .ok_or_else(|| Error::DimensionMismatch(format!("no moments for segment {seg:?}")))
    }

    /// `w_k^i`
    pub fn block(&self, seg: Segment, k: usize) -> Result<DVectorView<'_, f64>> {
        let part = self.part(seg)?;
        if k > self.order {
            return Err(Error::DimensionMismatch(format!("block {k} > order {}", self.order)));
        }
        Ok(part.rows(k * self.dim, self.dim))
    }

    pub fn stacked(&self) -> DVector<f64> {
        let mut out = DVector::zeros(self.len());
        for (i, p) in self.parts.iter().enumerate() {
            out.rows_mut(i * self.part_len(), self.part_len()).copy_from(p);
        }
        out
    }

    /// Stacked vector with every part except `seg` zeroed.
    pub fn padded(&self, seg: Segment) -> Result<DVector<f64>> {
        let part = self.part(seg)?;
        let mut out = DVector::zeros(self.len());
        out.rows_mut(seg.index() * self.part_len(), self.part_len())
            .copy_from(part);
        Ok(out)
    }
}

/// `w_k = <f, Π_k>` for every coordinate of `f`.
pub fn moments(space: &Space, basis: &Basis, f: &VectorPolynomial) -> Result<MomentVector> {
    let part = moment_part(space, basis, f)?;
    MomentVector::from_parts(basis.order(), f.dim(), vec![part])
}

/// Two-part moments over `D_1`, `D_2` with one basis per subinterval.
pub fn split_moments(
    pieces: (&Space, &Space),
    bases: (&Basis, &Basis),
    f: &VectorPolynomial,
) -> Result<MomentVector> {
    if bases.0.order() != bases.1.order() {
        return Err(Error::DimensionMismatch(
            "subinterval bases must share the same order".into(),
        ));
    }
    let first = moment_part(pieces.0, bases.0, f)?;
    let second = moment_part(pieces.1, bases.1, f)?;
    MomentVector::from_parts(bases.0.order(), f.dim(), vec![first, second])
}

fn moment_part(space: &Space, basis: &Basis, f: &VectorPolynomial) -> Result<DVector<f64>> {
    if basis.space() != space {
        return Err(Error::DimensionMismatch(
            "basis was built on a different space".into(),
        ));
    }
    let n = f.dim();
    let mut out = DVector::zeros((basis.order() + 1) * n);
    for (k, pk) in basis.functions().iter().enumerate() {
        for (i, fi) in f.components().iter().enumerate() {
            out[k * n + i] = space.inner_product(fi, pk);
        }
    }
    Ok(out)
}

/// Brute-force `<f, W f>` by exact integration of every `f_i f_j` product.
///
/// This is the oracle all lower bounds are checked against; it never touches
/// bases, moments or any bound formula.
pub fn exact_energy(space: &Space, f: &VectorPolynomial, w: &DMatrix<f64>) -> Result<f64> {
    let n = f.dim();
    if w.nrows() != n || w.ncols() != n {
        return Err(Error::DimensionMismatch(format!(
            "weight is {}x{}, function has {n} coordinates",
            w.nrows(),
            w.ncols()
        )));
    }
    let fs = f.components();
    let mut acc = 0.0;
    for i in 0..n {
        for j in i..n {
            let wij = if i == j { w[(i, i)] } else { w[(i, j)] + w[(j, i)] };
            if wij != 0.0 {
                acc += wij * space.inner_product(&fs[i], &fs[j]);
            }
        }
    }
    Ok(acc)
}

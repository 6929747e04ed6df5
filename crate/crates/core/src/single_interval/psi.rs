use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::linalg::{self, PsdCertificate};

/// The free-parameter block matrix
///
/// ```text
///     ┌ Z_00 … Z_0ν  N_0 ┐
/// Ψ = │  ⋮   ⋱  ⋮    ⋮  │
///     │ Z_ν0 … Z_νν  N_ν │
///     └ N_0ᵀ … N_νᵀ  W   ┘
/// ```
///
/// with `Z_kl ∈ R^{M×M}`, `Z_lk = Z_klᵀ`, `N_k ∈ R^{M×n}` and `W ≻ 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct PsiMatrix {
    order: usize,
    block: usize,
    z: Vec<DMatrix<f64>>,
    n_blocks: Vec<DMatrix<f64>>,
    weight: DMatrix<f64>,
    weight_inv: DMatrix<f64>,
}

impl PsiMatrix {
    /// `z[k][l]` is `Z_kl`; the grid must be symmetric blockwise.
    pub fn new(
        z: Vec<Vec<DMatrix<f64>>>,
        n_blocks: Vec<DMatrix<f64>>,
        weight: DMatrix<f64>,
    ) -> Result<Self> {
        let (order, block, weight_inv) = validate_common(&n_blocks, &weight)?;
        if z.len() != order + 1 || z.iter().any(|row| row.len() != order + 1) {
            return Err(Error::DimensionMismatch(format!(
                "Z grid must be {0}x{0} blocks",
                order + 1
            )));
        }
        for k in 0..=order {
            for l in 0..=order {
                let zkl = &z[k][l];
                if zkl.nrows() != block || zkl.ncols() != block {
                    return Err(Error::DimensionMismatch(format!(
                        "Z_{k}{l} is {}x{}, expected {block}x{block}",
                        zkl.nrows(),
                        zkl.ncols()
                    )));
                }
                let asym = linalg::max_abs_diff(zkl, &z[l][k].transpose());
                if asym > 1e-12 * linalg::max_abs(zkl).max(1.0) {
                    return Err(Error::Asymmetric { asymmetry: asym });
                }
            }
        }
        Ok(Self {
            order,
            block,
            z: z.into_iter().flatten().collect(),
            n_blocks,
            weight,
            weight_inv,
        })
    }

    /// Builds `Z_kl = φ_kl + N_k W⁻¹ N_lᵀ` from a prescribed Schur complement
    /// `Φ`. Then `Ψ ⪰ 0` exactly when `Φ ⪰ 0`.
    pub fn from_schur(
        phi: &DMatrix<f64>,
        n_blocks: Vec<DMatrix<f64>>,
        weight: DMatrix<f64>,
    ) -> Result<Self> {
        let (order, block, weight_inv) = validate_common(&n_blocks, &weight)?;
        let size = (order + 1) * block;
        if phi.nrows() != size || phi.ncols() != size {
            return Err(Error::DimensionMismatch(format!(
                "Schur complement must be {size}x{size}"
            )));
        }
        let phi = linalg::symmetrize(phi);
        let mut z = Vec::with_capacity((order + 1) * (order + 1));
        for k in 0..=order {
            for l in 0..=order {
                let nk_winv = &n_blocks[k] * &weight_inv;
                let base = phi.view((k * block, l * block), (block, block)).into_owned();
                z.push(base + nk_winv * n_blocks[l].transpose());
            }
        }
        Ok(Self {
            order,
            block,
            z,
            n_blocks,
            weight,
            weight_inv,
        })
    }

    /// The admissible choice `Z_kl = N_k W⁻¹ N_lᵀ` (zero Schur complement).
    pub fn minimal(n_blocks: Vec<DMatrix<f64>>, weight: DMatrix<f64>) -> Result<Self> {
        let (order, block, _) = validate_common(&n_blocks, &weight)?;
        let size = (order + 1) * block;
        Self::from_schur(&DMatrix::zeros(size, size), n_blocks, weight)
    }

    /// `ν`
    pub fn order(&self) -> usize {
        self.order
    }

    /// `M`, the row size of every `Z_kl` and `N_k`.
    pub fn block_size(&self) -> usize {
        self.block
    }

    /// `n`
    pub fn dim(&self) -> usize {
        self.weight.nrows()
    }

    pub fn z(&self, k: usize, l: usize) -> &DMatrix<f64> {
        &self.z[k * (self.order + 1) + l]
    }

    pub fn n_block(&self, k: usize) -> &DMatrix<f64> {
        &self.n_blocks[k]
    }

    pub fn n_blocks(&self) -> &[DMatrix<f64>] {
        &self.n_blocks
    }

    pub fn weight(&self) -> &DMatrix<f64> {
        &self.weight
    }

    pub fn weight_inverse(&self) -> &DMatrix<f64> {
        &self.weight_inv
    }

    /// Size of the assembled matrix, `(ν + 1) M + n`.
    pub fn size(&self) -> usize {
        (self.order + 1) * self.block + self.dim()
    }

    pub fn assemble(&self) -> DMatrix<f64> {
        let (m, n, nb) = (self.block, self.dim(), self.order + 1);
        let mut out = DMatrix::zeros(self.size(), self.size());
        for k in 0..nb {
            for l in 0..nb {
                out.view_mut((k * m, l * m), (m, m)).copy_from(self.z(k, l));
            }
            out.view_mut((k * m, nb * m), (m, n))
                .copy_from(&self.n_blocks[k]);
            out.view_mut((nb * m, k * m), (n, m))
                .copy_from(&self.n_blocks[k].transpose());
        }
        out.view_mut((nb * m, nb * m), (n, n)).copy_from(&self.weight);
        out
    }

    /// `Φ` with blocks `φ_kl = Z_kl − N_k W⁻¹ N_lᵀ`.
    pub fn schur_complement(&self) -> DMatrix<f64> {
        let (m, nb) = (self.block, self.order + 1);
        let mut out = DMatrix::zeros(nb * m, nb * m);
        for k in 0..nb {
            let nk_winv = &self.n_blocks[k] * &self.weight_inv;
            for l in 0..nb {
                let phi = self.z(k, l) - &nk_winv * self.n_blocks[l].transpose();
                out.view_mut((k * m, l * m), (m, m)).copy_from(&phi);
            }
        }
        linalg::symmetrize(&out)
    }

    pub fn psd(&self, tol: f64) -> Result<PsdCertificate> {
        linalg::psd_check(&self.assemble(), tol)
    }

    /// `N̂ = (N_0, …, N_ν) ∈ R^{M×(ν+1)n}`.
    pub fn free_matrix_core(&self) -> DMatrix<f64> {
        let (m, n) = (self.block, self.dim());
        let mut out = DMatrix::zeros(m, (self.order + 1) * n);
        for (k, nk) in self.n_blocks.iter().enumerate() {
            out.view_mut((0, k * n), (m, n)).copy_from(nk);
        }
        out
    }
}

/// Splits `N̂ ∈ R^{M×(ν+1)n}` into its `N_k` column blocks.
pub fn split_free_matrix(core: &DMatrix<f64>, dim: usize) -> Result<Vec<DMatrix<f64>>> {
    if dim == 0 || !core.ncols().is_multiple_of(dim) {
        return Err(Error::DimensionMismatch(format!(
            "{} columns do not split into blocks of {dim}",
            core.ncols()
        )));
    }
    Ok((0..core.ncols() / dim)
        .map(|k| core.columns(k * dim, dim).into_owned())
        .collect())
}

fn validate_common(
    n_blocks: &[DMatrix<f64>],
    weight: &DMatrix<f64>,
) -> Result<(usize, usize, DMatrix<f64>)> {
    linalg::ensure_square(weight)?;
    let n = weight.nrows();
    let asym = linalg::max_abs_diff(weight, &weight.transpose());
    if asym > 1e-12 * linalg::max_abs(weight).max(1.0) {
        return Err(Error::Asymmetric { asymmetry: asym });
    }
    let weight_inv = linalg::spd_inverse(weight)?;
    let first = n_blocks
        .first()
        .ok_or_else(|| Error::DimensionMismatch("need at least one N_k block".into()))?;
    let block = first.nrows();
    if n_blocks.iter().any(|b| b.nrows() != block || b.ncols() != n) {
        return Err(Error::DimensionMismatch(format!(
            "every N_k must be {block}x{n}"
        )));
    }
    Ok((n_blocks.len() - 1, block, weight_inv))
}

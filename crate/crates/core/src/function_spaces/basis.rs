use super::poly::Polynomial;
use super::space::{Space, SpaceKind};
use crate::error::{Error, Result};

/// Orthogonal system `Π_0 ≡ 1, Π_1, ..., Π_ν` on a [`Space`] with norm-squares
/// `ρ_k = ‖Π_k‖²`.
#[derive(Debug, Clone, PartialEq)]
pub struct Basis {
    space: Space,
    functions: Vec<Polynomial>,
    norms: Vec<f64>,
}

impl Basis {
    /// Shifted Legendre polynomials on intervals (`ρ_k = h / (2k + 1)`),
    /// monic Gram–Schmidt polynomials on integer ranges.
    pub fn build(space: &Space, order: usize) -> Result<Self> {
        match space.kind() {
            SpaceKind::Continuous => Ok(Self::legendre(space, order)),
            SpaceKind::Discrete => Self::gram_schmidt(space, order),
        }
    }

    fn legendre(space: &Space, order: usize) -> Self {
        let h = space.upper() - space.lower();
        let r = 0.5 * h;
        let center = space.midpoint();
        // Legendre coefficients in x = (t - center) / r
        let mut rows: Vec<Vec<f64>> = vec![vec![1.0]];
        if order >= 1 {
            rows.push(vec![0.0, 1.0]);
        }
        for k in 1..order {
            let mut next = vec![0.0; k + 2];
            for (j, c) in rows[k].iter().enumerate() {
                next[j + 1] += (2 * k + 1) as f64 * c;
            }
            for (j, c) in rows[k - 1].iter().enumerate() {
                next[j] -= k as f64 * c;
            }
            for c in next.iter_mut() {
                *c /= (k + 1) as f64;
            }
            rows.push(next);
        }
        let functions = rows
            .into_iter()
            .map(|row| {
                let scaled = row
                    .iter()
                    .enumerate()
                    .map(|(j, c)| c / r.powi(j as i32))
                    .collect();
                Polynomial::centered(scaled, center)
            })
            .collect();
        let norms = (0..=order).map(|k| h / (2 * k + 1) as f64).collect();
        Self {
            space: *space,
            functions,
            norms,
        }
    }

    fn gram_schmidt(space: &Space, order: usize) -> Result<Self> {
        let points = space.measure() as usize;
        if points < order + 1 {
            return Err(Error::DegenerateBasis {
                points,
                order,
                needed: order + 1,
            });
        }
        let center = space.midpoint();
        let mut functions: Vec<Polynomial> = Vec::with_capacity(order + 1);
        let mut norms: Vec<f64> = Vec::with_capacity(order + 1);
        for k in 0..=order {
            let mut coeffs = vec![0.0; k + 1];
            coeffs[k] = 1.0;
            let mut p = Polynomial::centered(coeffs, center);
            // second sweep re-orthogonalizes against rounding left by the first
            for _ in 0..2 {
                for (q, rho) in functions.iter().zip(&norms) {
                    let c = space.inner_product(&p, q) / rho;
                    p = p.add(&q.scale(-c));
                }
            }
            norms.push(space.inner_product(&p, &p));
            functions.push(p);
        }
        Ok(Self {
            space: *space,
            functions,
            norms,
        })
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    /// `ν`
    pub fn order(&self) -> usize {
        self.functions.len() - 1
    }

    pub fn functions(&self) -> &[Polynomial] {
        &self.functions
    }

    /// `ρ_0 .. ρ_ν`
    pub fn norms(&self) -> &[f64] {
        &self.norms
    }
}

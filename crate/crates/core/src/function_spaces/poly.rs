use crate::error::{Error, Result};

/// Highest degree accepted for the vector-valued functions under test.
pub const MAX_DEGREE: usize = 12;

/// Scalar polynomial `p(t) = sum_k c_k (t - center)^k`.
///
/// Keeping an expansion point lets basis functions live around the midpoint
/// of their interval, which keeps coefficients well scaled on intervals far
/// from the origin.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<f64>,
    center: f64,
}

impl Polynomial {
    /// Monomial coefficients around `t = 0`, lowest degree first.
    pub fn new(coeffs: Vec<f64>) -> Self {
        Self::centered(coeffs, 0.0)
    }

    pub fn centered(mut coeffs: Vec<f64>, center: f64) -> Self {
        if coeffs.is_empty() {
            coeffs.push(0.0);
        }
        Self { coeffs, center }
    }

    pub fn zero() -> Self {
        Self::new(vec![0.0])
    }

    pub fn constant(c: f64) -> Self {
        Self::new(vec![c])
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    /// Degree ignoring trailing zero coefficients; the zero polynomial has degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.iter().rposition(|c| *c != 0.0).unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == 0.0)
    }

    pub fn eval(&self, t: f64) -> f64 {
        let s = t - self.center;
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * s + c)
    }

    /// Same polynomial expanded around `center`.
    pub fn recentered(&self, center: f64) -> Self {
        if center == self.center {
            return self.clone();
        }
        // (t - c0) = (t - c1) + d
        let d = center - self.center;
        let n = self.coeffs.len();
        let mut out = vec![0.0; n];
        for (k, &ck) in self.coeffs.iter().enumerate() {
            if ck == 0.0 {
                continue;
            }
            let mut binom = 1.0;
            let mut dpow = 1.0;
            // term C(k, j) d^{k-j} s^j, walking j from k down to 0
            for j in (0..=k).rev() {
                out[j] += ck * binom * dpow;
                binom = binom * j as f64 / (k - j + 1) as f64;
                dpow *= d;
            }
        }
        Self::centered(out, center)
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let other = other.recentered(self.center);
        let mut out = vec![0.0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == 0.0 {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::centered(out, self.center)
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let other = other.recentered(self.center);
        let mut out = vec![0.0; self.coeffs.len().max(other.coeffs.len())];
        for (i, a) in self.coeffs.iter().enumerate() {
            out[i] += a;
        }
        for (i, b) in other.coeffs.iter().enumerate() {
            out[i] += b;
        }
        Self::centered(out, self.center)
    }

    pub fn scale(&self, s: f64) -> Polynomial {
        Self::centered(self.coeffs.iter().map(|c| c * s).collect(), self.center)
    }
}

/// `f: D -> R^n` with polynomial coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorPolynomial {
    components: Vec<Polynomial>,
}

impl VectorPolynomial {
    pub fn new(components: Vec<Polynomial>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::DimensionMismatch(
                "vector polynomial needs at least one coordinate".into(),
            ));
        }
        if let Some(p) = components.iter().find(|p| p.degree() > MAX_DEGREE) {
            return Err(Error::InvalidConfig(format!(
                "degree {} exceeds the supported maximum {MAX_DEGREE}",
                p.degree()
            )));
        }
        Ok(Self { components })
    }

    /// Convenience constructor from per-coordinate monomial coefficients around 0.
    pub fn from_coeffs(coeffs: Vec<Vec<f64>>) -> Result<Self> {
        Self::new(coeffs.into_iter().map(Polynomial::new).collect())
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            components: vec![Polynomial::zero(); dim.max(1)],
        }
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn degree(&self) -> usize {
        self.components.iter().map(Polynomial::degree).max().unwrap_or(0)
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn eval(&self, t: f64) -> Vec<f64> {
        self.components.iter().map(|p| p.eval(t)).collect()
    }
}

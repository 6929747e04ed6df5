use serde::{Deserialize, Serialize};

use super::poly::Polynomial;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpaceKind {
    /// `<p, q> = ∫_a^b p(t) q(t) dt`
    Continuous,
    /// `<p, q> = Σ_{t=a}^{b} p(t) q(t)` over integers
    Discrete,
}

/// Inner-product domain: a closed interval or an integer range.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Space {
    kind: SpaceKind,
    lower: f64,
    upper: f64,
}

impl Space {
    pub fn new(kind: SpaceKind, lower: f64, upper: f64) -> Result<Self> {
        if !lower.is_finite() || !upper.is_finite() {
            return Err(Error::InvalidInterval(format!(
                "non-finite bounds [{lower}, {upper}]"
            )));
        }
        match kind {
            SpaceKind::Continuous if lower >= upper => Err(Error::InvalidInterval(format!(
                "continuous domain needs a < b, got [{lower}, {upper}]"
            ))),
            SpaceKind::Discrete if lower.fract() != 0.0 || upper.fract() != 0.0 => {
                Err(Error::InvalidInterval(format!(
                    "discrete domain needs integer bounds, got {{{lower}..{upper}}}"
                )))
            }
            SpaceKind::Discrete if lower > upper => Err(Error::InvalidInterval(format!(
                "discrete domain needs a <= b, got {{{lower}..{upper}}}"
            ))),
            _ => Ok(Self { kind, lower, upper }),
        }
    }

    pub fn continuous(lower: f64, upper: f64) -> Result<Self> {
        Self::new(SpaceKind::Continuous, lower, upper)
    }

    pub fn discrete(lower: i64, upper: i64) -> Result<Self> {
        Self::new(SpaceKind::Discrete, lower as f64, upper as f64)
    }

    pub fn kind(&self) -> SpaceKind {
        self.kind
    }

    pub fn lower(&self) -> f64 {
        self.lower
    }

    pub fn upper(&self) -> f64 {
        self.upper
    }

    /// Length `b - a` of a continuous interval; number of points for a range.
    pub fn measure(&self) -> f64 {
        match self.kind {
            SpaceKind::Continuous => self.upper - self.lower,
            SpaceKind::Discrete => self.upper - self.lower + 1.0,
        }
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lower + self.upper)
    }

    /// Integer points of a discrete domain (empty for continuous ones).
    pub fn points(&self) -> impl Iterator<Item = f64> {
        let (lo, hi) = match self.kind {
            SpaceKind::Discrete => (self.lower as i64, self.upper as i64),
            SpaceKind::Continuous => (1, 0),
        };
        (lo..=hi).map(|t| t as f64)
    }

    /// Splits into `D1 = [a, c)` and `D2 = [c, b]`; for ranges `D1 = {a..c-1}`.
    ///
    /// Inner products are additive over the two pieces.
    pub fn split(&self, c: f64) -> Result<(Space, Space)> {
        let err = Error::InvalidSplit {
            lower: self.lower,
            upper: self.upper,
            point: c,
        };
        match self.kind {
            SpaceKind::Continuous => {
                if !(c > self.lower && c < self.upper) {
                    return Err(err);
                }
                Ok((
                    Space::continuous(self.lower, c)?,
                    Space::continuous(c, self.upper)?,
                ))
            }
            SpaceKind::Discrete => {
                if c.fract() != 0.0 || c <= self.lower || c > self.upper {
                    return Err(err);
                }
                Ok((
                    Space::new(SpaceKind::Discrete, self.lower, c - 1.0)?,
                    Space::new(SpaceKind::Discrete, c, self.upper)?,
                ))
            }
        }
    }

    /// `<1, p>`: exact integral or sum of a polynomial over the domain.
    pub fn integrate(&self, p: &Polynomial) -> f64 {
        match self.kind {
            SpaceKind::Continuous => {
                let p = p.recentered(self.midpoint());
                let r = 0.5 * (self.upper - self.lower);
                // only even powers survive on a symmetric interval
                let mut rpow = r;
                let mut acc = 0.0;
                for (k, c) in p.coeffs().iter().enumerate() {
                    if k % 2 == 0 {
                        acc += c * 2.0 * rpow / (k + 1) as f64;
                    }
                    rpow *= r;
                }
                acc
            }
            SpaceKind::Discrete => self.points().map(|t| p.eval(t)).sum(),
        }
    }

    pub fn inner_product(&self, phi: &Polynomial, psi: &Polynomial) -> f64 {
        match self.kind {
            SpaceKind::Continuous => self.integrate(&phi.mul(psi)),
            SpaceKind::Discrete => self.points().map(|t| phi.eval(t) * psi.eval(t)).sum(),
        }
    }
}

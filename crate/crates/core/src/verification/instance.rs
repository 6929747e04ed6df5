use nalgebra::DMatrix;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::sampling::{random_function, random_weight, trial_rng};
use crate::error::{Error, Result};
use crate::function_spaces::{
    moments, split_moments, Basis, MomentVector, Space, SpaceKind, VectorPolynomial, MAX_DEGREE,
};
use crate::two_interval::{SplitGeometry, WeightLadder};

/// Which domains random instances live on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpaceChoice {
    Continuous,
    Discrete,
    /// Continuous on even trials, discrete on odd ones.
    Both,
}

/// Where `[a, b]` is split.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "rule", content = "value")]
pub enum SplitRule {
    /// Uniform in the middle 80% of the domain.
    Random,
    /// `c = a + fraction·(b − a)`, rounded for ranges.
    Fraction(f64),
}

/// Everything needed to regenerate one family of random instances.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceConfig {
    pub n: usize,
    pub order: usize,
    pub space: SpaceChoice,
    /// Fixed domain bounds; random per trial when absent.
    pub interval: Option<[f64; 2]>,
    pub split: SplitRule,
    /// Upper bound on the degree of `f`; `order + 2` when absent.
    pub degree: Option<usize>,
    pub seed: u64,
}

impl InstanceConfig {
    pub fn new(n: usize, order: usize, seed: u64) -> Self {
        Self {
            n,
            order,
            space: SpaceChoice::Continuous,
            interval: None,
            split: SplitRule::Random,
            degree: None,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidConfig("n must be at least 1".into()));
        }
        if self.order > MAX_DEGREE {
            return Err(Error::InvalidConfig(format!(
                "order {} exceeds {MAX_DEGREE}",
                self.order
            )));
        }
        if self.degree_bound() > MAX_DEGREE {
            return Err(Error::InvalidConfig(format!(
                "degree bound exceeds {MAX_DEGREE}"
            )));
        }
        if let SplitRule::Fraction(x) = self.split {
            if !(x > 0.0 && x < 1.0) {
                return Err(Error::InvalidConfig(format!("split fraction {x} not in (0, 1)")));
            }
        }
        if let Some([a, b]) = self.interval {
            if !(a < b) || !a.is_finite() || !b.is_finite() {
                return Err(Error::InvalidConfig(format!("interval [{a}, {b}] is empty")));
            }
            if self.space != SpaceChoice::Continuous {
                let (a, b) = (a.round(), b.round());
                let half = (self.order + 1) as f64;
                if b - a + 1.0 < 2.0 * half {
                    return Err(Error::InvalidConfig(format!(
                        "range {{{a}..{b}}} too short for two bases of order {}",
                        self.order
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn degree_bound(&self) -> usize {
        self.degree.unwrap_or((self.order + 2).min(MAX_DEGREE))
    }
}

/// A random function, weight and domain with moments over the whole domain
/// and over both halves of a split.
#[derive(Debug, Clone)]
pub struct Instance {
    pub trial: u64,
    pub space: Space,
    pub split_point: f64,
    pub pieces: (Space, Space),
    pub basis: Basis,
    pub piece_bases: (Basis, Basis),
    pub f: VectorPolynomial,
    pub weight: DMatrix<f64>,
    pub moments: MomentVector,
    pub split_moments: MomentVector,
}

impl Instance {
    /// Two-interval geometry; only meaningful on continuous domains.
    pub fn geometry(&self) -> Result<SplitGeometry> {
        SplitGeometry::new(self.space.lower(), self.split_point, self.space.upper())
    }

    pub fn ladder(&self) -> Result<WeightLadder> {
        WeightLadder::new(&self.weight, self.basis.order())
    }

    pub fn piece(&self, index: usize) -> &Space {
        if index == 0 {
            &self.pieces.0
        } else {
            &self.pieces.1
        }
    }

    pub fn piece_basis(&self, index: usize) -> &Basis {
        if index == 0 {
            &self.piece_bases.0
        } else {
            &self.piece_bases.1
        }
    }
}

fn kind_for(choice: SpaceChoice, trial: u64) -> SpaceKind {
    match choice {
        SpaceChoice::Continuous => SpaceKind::Continuous,
        SpaceChoice::Discrete => SpaceKind::Discrete,
        SpaceChoice::Both if trial.is_multiple_of(2) => SpaceKind::Continuous,
        SpaceChoice::Both => SpaceKind::Discrete,
    }
}

/// Deterministic in `(cfg, trial)`.
pub fn random_instance(cfg: &InstanceConfig, trial: u64) -> Result<Instance> {
    cfg.validate()?;
    let mut rng = trial_rng(cfg.seed, trial);
    let kind = kind_for(cfg.space, trial);
    let order = cfg.order;

    let (space, split_point) = match kind {
        SpaceKind::Continuous => {
            let (a, b) = match cfg.interval {
                Some([a, b]) => (a, b),
                None => {
                    let a = rng.gen_range(-2.0..=2.0);
                    (a, a + rng.gen_range(0.5..=3.0))
                }
            };
            let c = match cfg.split {
                SplitRule::Random => a + (b - a) * rng.gen_range(0.1..=0.9),
                SplitRule::Fraction(x) => a + (b - a) * x,
            };
            (Space::continuous(a, b)?, c)
        }
        SpaceKind::Discrete => {
            let need = (order + 1) as i64;
            let (a, b) = match cfg.interval {
                Some([a, b]) => (a.round() as i64, b.round() as i64),
                None => {
                    let a = rng.gen_range(-5..=5);
                    (a, a + 2 * need - 1 + rng.gen_range(0..=10))
                }
            };
            let raw = match cfg.split {
                SplitRule::Random => rng.gen_range(a + need..=b + 1 - need),
                SplitRule::Fraction(x) => a + ((b - a + 1) as f64 * x).round() as i64,
            };
            (Space::discrete(a, b)?, raw.clamp(a + need, b + 1 - need) as f64)
        }
    };

    let pieces = space.split(split_point)?;
    let basis = Basis::build(&space, order)?;
    let piece_bases = (Basis::build(&pieces.0, order)?, Basis::build(&pieces.1, order)?);
    let degree = rng.gen_range(0..=cfg.degree_bound());
    let f = random_function(&mut rng, cfg.n, degree, space.midpoint());
    let weight = random_weight(&mut rng, cfg.n);
    let moments = moments(&space, &basis, &f)?;
    let split_moments = split_moments(
        (&pieces.0, &pieces.1),
        (&piece_bases.0, &piece_bases.1),
        &f,
    )?;
    Ok(Instance {
        trial,
        space,
        split_point,
        pieces,
        basis,
        piece_bases,
        f,
        weight,
        moments,
        split_moments,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg;

    #[test]
    fn same_seed_same_instance() {
        let cfg = InstanceConfig::new(2, 1, 1);
        let a = random_instance(&cfg, 3).unwrap();
        let b = random_instance(&cfg, 3).unwrap();
        assert_eq!(a.f, b.f);
        assert_eq!(a.weight, b.weight);
        assert_eq!(a.split_moments, b.split_moments);
    }

    #[test]
    fn weight_lower_eigenvalue() {
        let cfg = InstanceConfig::new(3, 1, 5);
        for t in 0..20 {
            let inst = random_instance(&cfg, t).unwrap();
            assert_eq!(inst.weight.nrows(), 3);
            assert!(linalg::psd_check(&inst.weight, 0.0).unwrap().min_eigenvalue >= 0.1 - 1e-12);
        }
    }

    #[test]
    fn continuous_norms_follow_length() {
        let inst = random_instance(&InstanceConfig::new(1, 2, 2), 0).unwrap();
        let h = inst.space.measure();
        for (k, rho) in inst.basis.norms().iter().enumerate() {
            assert!((rho - h / (2 * k + 1) as f64).abs() < 1e-12);
        }
    }

    #[test]
    fn discrete_halves_are_large_enough() {
        let mut cfg = InstanceConfig::new(2, 3, 9);
        cfg.space = SpaceChoice::Discrete;
        for t in 0..50 {
            let inst = random_instance(&cfg, t).unwrap();
            assert!(inst.pieces.0.measure() >= 4.0 && inst.pieces.1.measure() >= 4.0);
        }
    }

    #[test]
    fn invalid_configs() {
        assert!(InstanceConfig::new(0, 1, 0).validate().is_err());
        let mut cfg = InstanceConfig::new(1, 1, 0);
        cfg.degree = Some(13);
        assert!(matches!(cfg.validate(), Err(Error::InvalidConfig(_))));
        cfg.degree = None;
        cfg.split = SplitRule::Fraction(1.0);
        assert!(cfg.validate().is_err());
    }
}

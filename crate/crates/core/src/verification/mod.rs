//! Randomized instances, exact-oracle comparisons and the property suites.
//!
//! Every suite draws each trial from its own RNG stream, so a report depends
//! only on the configuration and seed.

mod instance;
mod report;
pub mod sampling;
mod suites;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

pub use instance::{random_instance, Instance, InstanceConfig, SpaceChoice, SplitRule};
pub use report::{agreement, slack, Context, Failure, Status, SuiteReport};

use crate::error::{Error, Result};

/// Per-property tolerances. All inequality and equality checks are relative to
/// `max(1, |a|, |b|)`; PSD margins are relative to `max(1, spectral radius)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    pub soundness: f64,
    pub ordering: f64,
    pub equality: f64,
    pub psd: f64,
    /// Elementwise matrix identities.
    pub identity: f64,
    pub span: f64,
    pub orthogonality: f64,
    /// Equality of ERC and SERC at the boundary `X`'s.
    pub boundary: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            soundness: 1e-9,
            ordering: 1e-9,
            equality: 1e-8,
            psd: 1e-8,
            identity: 1e-12,
            span: 1e-10,
            orthogonality: 1e-10,
            boundary: 1e-10,
        }
    }
}

impl Tolerances {
    /// The same tolerance for every property.
    pub fn uniform(tol: f64) -> Self {
        Self {
            soundness: tol,
            ordering: tol,
            equality: tol,
            psd: tol,
            identity: tol,
            span: tol,
            orthogonality: tol,
            boundary: tol,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SuiteId {
    Soundness,
    Ordering,
    EquivalenceGfmbIfb,
    EquivalenceSgfmbBbi,
    EquivalenceSfmbSgfmb,
    Schur,
    TwoIntervalDomination,
    #[serde(rename = "relations-ABCDE")]
    RelationsAbcde,
    #[serde(rename = "counterexamples-BD")]
    CounterexamplesBd,
    BesselSpanTightness,
}

impl SuiteId {
    pub const ALL: [SuiteId; 10] = [
        SuiteId::Soundness,
        SuiteId::Ordering,
        SuiteId::EquivalenceGfmbIfb,
        SuiteId::EquivalenceSgfmbBbi,
        SuiteId::EquivalenceSfmbSgfmb,
        SuiteId::Schur,
        SuiteId::TwoIntervalDomination,
        SuiteId::RelationsAbcde,
        SuiteId::CounterexamplesBd,
        SuiteId::BesselSpanTightness,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SuiteId::Soundness => "soundness",
            SuiteId::Ordering => "ordering",
            SuiteId::EquivalenceGfmbIfb => "equivalence-gfmb-ifb",
            SuiteId::EquivalenceSgfmbBbi => "equivalence-sgfmb-bbi",
            SuiteId::EquivalenceSfmbSgfmb => "equivalence-sfmb-sgfmb",
            SuiteId::Schur => "schur",
            SuiteId::TwoIntervalDomination => "two-interval-domination",
            SuiteId::RelationsAbcde => "relations-ABCDE",
            SuiteId::CounterexamplesBd => "counterexamples-BD",
            SuiteId::BesselSpanTightness => "bessel-span-tightness",
        }
    }

    fn index(self) -> u64 {
        SuiteId::ALL.iter().position(|s| *s == self).unwrap_or(0) as u64
    }
}

impl fmt::Display for SuiteId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SuiteId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SuiteId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

/// Configuration shared by all suites. `trials` applies to every `(n, ν)` pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuiteConfig {
    pub dims: Vec<usize>,
    pub orders: Vec<usize>,
    pub space: SpaceChoice,
    pub interval: Option<[f64; 2]>,
    pub split: SplitRule,
    pub degree: Option<usize>,
    pub seed: u64,
    pub trials: u64,
    /// Draws per counterexample search.
    pub budget: u64,
    /// Random competitors per counterexample draw.
    pub sweep: usize,
    pub tolerances: Tolerances,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            dims: vec![1, 2, 4],
            orders: vec![0, 1, 2, 3],
            space: SpaceChoice::Both,
            interval: None,
            split: SplitRule::Random,
            degree: None,
            seed: 1,
            trials: 100,
            budget: 10_000,
            sweep: 50,
            tolerances: Tolerances::default(),
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        if self.dims.is_empty() || self.orders.is_empty() {
            return Err(Error::InvalidConfig("dims and orders must be non-empty".into()));
        }
        if self.trials == 0 {
            return Err(Error::InvalidConfig("trials must be at least 1".into()));
        }
        for &n in &self.dims {
            for &order in &self.orders {
                self.instance(n, order).validate()?;
            }
        }
        Ok(())
    }

    /// Instance configuration for one `(n, ν)` pair.
    pub fn instance(&self, n: usize, order: usize) -> InstanceConfig {
        InstanceConfig {
            n,
            order,
            space: self.space,
            interval: self.interval,
            split: self.split,
            degree: self.degree,
            seed: self.seed,
        }
    }

    fn grid(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.dims
            .iter()
            .flat_map(move |&n| self.orders.iter().map(move |&o| (n, o)))
    }
}

/// Runs one suite by name.
pub fn run_suite_named(id: &str, cfg: &SuiteConfig) -> Result<SuiteReport> {
    run_suite(id.parse()?, cfg)
}

pub fn run_suite(id: SuiteId, cfg: &SuiteConfig) -> Result<SuiteReport> {
    cfg.validate()?;
    let start = Instant::now();
    let mut report = SuiteReport::new(id.as_str(), cfg.seed);
    match id {
        SuiteId::CounterexamplesBd => suites::counterexamples(cfg, &mut report)?,
        _ => {
            for (n, order) in cfg.grid() {
                let ctx = suites::Combo::new(id, cfg, n, order);
                match id {
                    SuiteId::Soundness => suites::soundness(&ctx, &mut report)?,
                    SuiteId::Ordering => suites::ordering(&ctx, &mut report)?,
                    SuiteId::EquivalenceGfmbIfb => suites::equivalence_gfmb_ifb(&ctx, &mut report)?,
                    SuiteId::EquivalenceSgfmbBbi => suites::equivalence_sgfmb_bbi(&ctx, &mut report)?,
                    SuiteId::EquivalenceSfmbSgfmb => {
                        suites::equivalence_sfmb_sgfmb(&ctx, &mut report)?
                    }
                    SuiteId::Schur => suites::schur(&ctx, &mut report)?,
                    SuiteId::TwoIntervalDomination => suites::domination(&ctx, &mut report)?,
                    SuiteId::RelationsAbcde => suites::relations(&ctx, &mut report)?,
                    SuiteId::BesselSpanTightness => suites::span_tightness(&ctx, &mut report)?,
                    SuiteId::CounterexamplesBd => unreachable!(),
                }
            }
            if id == SuiteId::BesselSpanTightness {
                suites::worked_example(cfg, &mut report)?;
            }
        }
    }
    report.elapsed = start.elapsed();
    Ok(report)
}

/// Runs every suite in order.
pub fn run_all(cfg: &SuiteConfig) -> Result<Vec<SuiteReport>> {
    SuiteId::ALL.iter().map(|id| run_suite(*id, cfg)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for id in SuiteId::ALL {
            assert_eq!(id.as_str().parse::<SuiteId>().unwrap(), id);
            let json = serde_json::to_string(&id).unwrap();
            assert_eq!(json, format!("\"{}\"", id.as_str()));
        }
        assert!(matches!("nope".parse::<SuiteId>(), Err(Error::UnknownSuite(_))));
    }

    #[test]
    fn unknown_suite_name() {
        assert!(matches!(
            run_suite_named("bogus", &SuiteConfig::default()),
            Err(Error::UnknownSuite(_))
        ));
    }

    #[test]
    fn invalid_config_rejected() {
        let cfg = SuiteConfig {
            trials: 0,
            ..SuiteConfig::default()
        };
        assert!(matches!(run_suite(SuiteId::Ordering, &cfg), Err(Error::InvalidConfig(_))));
    }
}

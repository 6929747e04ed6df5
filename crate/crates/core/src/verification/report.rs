use std::collections::BTreeMap;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::two_interval::Witness;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// A counterexample search ran out of budget; not a refutation.
    Exhausted,
}

/// One violated check. `margin` is signed: negative beyond `−tol` fails.
/// Non-finite margins are stored as `f64::MIN`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub property: String,
    pub trial: u64,
    /// Regenerates the instance: `suite/seed/n/ν/trial`.
    pub digest: String,
    /// `None` when the value was not finite.
    pub observed: Option<f64>,
    pub expected: Option<f64>,
    pub margin: f64,
    pub tol: f64,
}

/// Outcome of one suite. Wall time is kept out of the serialized form so that
/// equal inputs give byte-identical records.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub trials: u64,
    pub checks: u64,
    pub status: Status,
    pub failures: Vec<Failure>,
    /// Smallest margin seen per property (negative means violated by that much).
    pub worst_margins: BTreeMap<String, f64>,
    pub witnesses: Vec<Witness>,
    pub notes: Vec<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl SuiteReport {
    pub fn new(suite: &str, seed: u64) -> Self {
        Self {
            suite: suite.to_string(),
            seed,
            trials: 0,
            checks: 0,
            status: Status::Pass,
            failures: Vec::new(),
            worst_margins: BTreeMap::new(),
            witnesses: Vec::new(),
            notes: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn worst_margin(&self, property: &str) -> Option<f64> {
        self.worst_margins.get(property).copied()
    }

    /// Records a check with margin `margin` that passes when `margin ≥ −tol`.
    pub fn record(&mut self, property: &str, ctx: &Context, margin: f64, observed: f64, expected: f64, tol: f64) {
        self.checks += 1;
        let entry = self
            .worst_margins
            .entry(property.to_string())
            .or_insert(f64::INFINITY);
        // NaN must register as the worst possible margin
        let margin = if margin.is_nan() { f64::MIN } else { margin.max(f64::MIN) };
        if margin < *entry {
            *entry = margin;
        }
        if margin < -tol {
            self.failures.push(Failure {
                property: property.to_string(),
                trial: ctx.trial,
                digest: ctx.digest(&self.suite, self.seed),
                observed: finite(observed),
                expected: finite(expected),
                margin,
                tol,
            });
            self.status = Status::Fail;
        }
    }

    /// Records an evaluation error as a failure.
    pub fn record_error(&mut self, property: &str, ctx: &Context, err: &crate::Error) {
        self.checks += 1;
        self.worst_margins.insert(property.to_string(), f64::MIN);
        self.notes.push(format!("{}: {err}", ctx.digest(&self.suite, self.seed)));
        self.failures.push(Failure {
            property: property.to_string(),
            trial: ctx.trial,
            digest: ctx.digest(&self.suite, self.seed),
            observed: None,
            expected: None,
            margin: f64::MIN,
            tol: 0.0,
        });
        self.status = Status::Fail;
    }

    pub fn exhausted(&mut self, note: String) {
        if self.status == Status::Pass {
            self.status = Status::Exhausted;
        }
        self.notes.push(note);
    }

    /// Appends `other` into `self`; merging is associative.
    pub fn merge(&mut self, other: SuiteReport) {
        self.trials += other.trials;
        self.checks += other.checks;
        self.failures.extend(other.failures);
        for (k, v) in other.worst_margins {
            let e = self.worst_margins.entry(k).or_insert(f64::INFINITY);
            *e = e.min(v);
        }
        self.witnesses.extend(other.witnesses);
        self.notes.extend(other.notes);
        self.status = match (self.status, other.status) {
            (Status::Fail, _) | (_, Status::Fail) => Status::Fail,
            (Status::Exhausted, _) | (_, Status::Exhausted) => Status::Exhausted,
            _ => Status::Pass,
        };
        self.elapsed += other.elapsed;
    }
}

fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

/// Identifies the instance a check was made on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Context {
    pub n: usize,
    pub order: usize,
    pub trial: u64,
}

impl Context {
    pub fn digest(&self, suite: &str, seed: u64) -> String {
        format!("{suite}/{seed}/n{}/nu{}/t{}", self.n, self.order, self.trial)
    }
}

/// `(b − a) / max(1, |a|, |b|)`: the relative slack of `a ≤ b`.
pub fn slack(a: f64, b: f64) -> f64 {
    (b - a) / a.abs().max(b.abs()).max(1.0)
}

/// `−|a − b| / max(1, |a|, |b|)`: the margin of `a = b`.
pub fn agreement(a: f64, b: f64) -> f64 {
    -crate::linalg::rel_diff(a, b)
}

use std::path::Path;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::function_spaces::VectorPolynomial;
use crate::two_interval::SearchKind;
use crate::verification::{SuiteConfig, SuiteId};

/// The only schema version understood by this build.
pub const SCENARIO_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    /// Human-readable table.
    #[default]
    Table,
    /// One JSON record per line.
    Records,
}

/// A scenario document. Every section is optional except `version`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub version: u32,
    /// Suites to run; all of them when absent.
    #[serde(default)]
    pub suites: Option<Vec<SuiteId>>,
    #[serde(default)]
    pub format: Format,
    #[serde(default)]
    pub instance: SuiteConfig,
    #[serde(default)]
    pub compare: Option<CompareSection>,
    #[serde(default)]
    pub search: SearchSection,
}

/// A fixed function and weight tabulated over a grid of split fractions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompareSection {
    /// Monomial coefficients of each coordinate, lowest degree first.
    pub f: Vec<Vec<f64>>,
    /// Rows of `W`; the identity when absent.
    #[serde(default)]
    pub weight: Option<Vec<Vec<f64>>>,
    pub order: usize,
    #[serde(default = "unit_interval")]
    pub interval: [f64; 2],
    pub alphas: Vec<f64>,
    /// `Y = s𝒲` for the ERC, SERC, MERC and RCC columns; `|s| ≤ 1`.
    #[serde(default = "half")]
    pub y_scale: f64,
    /// ERC uses `θ` times the largest admissible `X`'s.
    #[serde(default = "half")]
    pub erc_fraction: f64,
    /// Split fraction at which the M-LSR parameters are tuned.
    #[serde(default = "half")]
    pub reference_alpha: f64,
}

fn unit_interval() -> [f64; 2] {
    [0.0, 1.0]
}

fn half() -> f64 {
    0.5
}

impl CompareSection {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::ConfigParse(format!("[compare] {msg}")));
        if self.f.is_empty() {
            return bad("f needs at least one coordinate".into());
        }
        if self.alphas.is_empty() {
            return bad("alphas must not be empty".into());
        }
        for &a in self.alphas.iter().chain([self.reference_alpha].iter()) {
            if !(a > 0.0 && a < 1.0) {
                return bad(format!("split fraction {a} not in (0, 1)"));
            }
        }
        if !(self.y_scale.abs() <= 1.0) {
            return bad(format!("y_scale {} must satisfy |s| <= 1", self.y_scale));
        }
        if !(0.0..=1.0).contains(&self.erc_fraction) {
            return bad(format!("erc_fraction {} not in [0, 1]", self.erc_fraction));
        }
        let [a, b] = self.interval;
        if !(a < b) || !a.is_finite() || !b.is_finite() {
            return bad(format!("interval [{a}, {b}] is empty"));
        }
        if let Some(rows) = &self.weight {
            if rows.len() != self.f.len() || rows.iter().any(|r| r.len() != self.f.len()) {
                return bad(format!("weight must be {0}x{0}", self.f.len()));
            }
        }
        Ok(())
    }

    pub fn function(&self) -> Result<VectorPolynomial> {
        VectorPolynomial::from_coeffs(self.f.clone())
    }

    pub fn weight_matrix(&self) -> DMatrix<f64> {
        let n = self.f.len();
        match &self.weight {
            Some(rows) => DMatrix::from_fn(n, n, |i, j| rows[i][j]),
            None => DMatrix::identity(n, n),
        }
    }
}

/// Defaults for `search`; command-line flags take precedence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SearchSection {
    pub kind: SearchKind,
    pub seed: u64,
    pub budget: u64,
    pub sweep: usize,
    pub order: usize,
    pub dim: usize,
}

impl Default for SearchSection {
    fn default() -> Self {
        Self {
            kind: SearchKind::B,
            seed: 7,
            budget: 10_000,
            sweep: 50,
            order: 0,
            dim: 1,
        }
    }
}

impl ScenarioFile {
    pub fn parse(text: &str) -> Result<Self> {
        let doc: ScenarioFile =
            toml::from_str(text).map_err(|e| Error::ConfigParse(e.to_string()))?;
        if doc.version != SCENARIO_VERSION {
            return Err(Error::ConfigParse(format!(
                "unsupported version {}, expected {SCENARIO_VERSION}",
                doc.version
            )));
        }
        if let Some(c) = &doc.compare {
            c.validate()?;
        }
        doc.instance
            .validate()
            .map_err(|e| Error::ConfigParse(format!("[instance] {e}")))?;
        Ok(doc)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::ConfigParse(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn selected_suites(&self) -> Vec<SuiteId> {
        self.suites.clone().unwrap_or_else(|| SuiteId::ALL.to_vec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_document() {
        let s = ScenarioFile::parse("version = 1").unwrap();
        assert_eq!(s.selected_suites().len(), 10);
        assert_eq!(s.format, Format::Table);
        assert_eq!(s.instance, SuiteConfig::default());
    }

    #[test]
    fn version_is_mandatory() {
        assert!(matches!(ScenarioFile::parse("suites = []"), Err(Error::ConfigParse(_))));
        assert!(matches!(ScenarioFile::parse("version = 2"), Err(Error::ConfigParse(_))));
    }

    #[test]
    fn unknown_fields_rejected() {
        for text in [
            "version = 1\nextra = 3",
            "version = 1\n[instance]\ntrails = 3",
            "version = 1\n[instance.tolerances]\nsoundnes = 1e-9",
            "version = 1\n[search]\nkinds = \"B\"",
        ] {
            assert!(matches!(ScenarioFile::parse(text), Err(Error::ConfigParse(_))), "{text}");
        }
    }

    #[test]
    fn suites_and_sections() {
        let s = ScenarioFile::parse(
            r#"
version = 1
suites = ["ordering", "relations-ABCDE"]
format = "records"
[instance]
dims = [2]
trials = 5
split = { rule = "fraction", value = 0.25 }
[instance.tolerances]
psd = 1e-7
[search]
kind = "D"
budget = 3
"#,
        )
        .unwrap();
        assert_eq!(s.selected_suites(), vec![SuiteId::Ordering, SuiteId::RelationsAbcde]);
        assert_eq!(s.format, Format::Records);
        assert_eq!(s.instance.trials, 5);
        assert_eq!(s.instance.tolerances.psd, 1e-7);
        assert_eq!(s.search.kind, SearchKind::D);
        assert_eq!(s.search.seed, 7);
    }

    #[test]
    fn unknown_suite_is_a_parse_error() {
        let r = ScenarioFile::parse("version = 1\nsuites = [\"nope\"]");
        assert!(matches!(r, Err(Error::ConfigParse(_))));
    }

    #[test]
    fn compare_validation() {
        let base = "version = 1\n[compare]\nf = [[0.0, 1.0], [1.0]]\norder = 1\n";
        assert!(ScenarioFile::parse(&format!("{base}alphas = [0.5]")).is_ok());
        for bad in ["alphas = []", "alphas = [1.0]", "alphas = [0.5]\ny_scale = 2.0"] {
            assert!(
                matches!(ScenarioFile::parse(&format!("{base}{bad}")), Err(Error::ConfigParse(_))),
                "{bad}"
            );
        }
    }
}

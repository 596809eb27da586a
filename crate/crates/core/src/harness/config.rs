use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Core,
    Symbols,
    Quantize,
    Projectors,
    Deform,
    Toeplitz,
    All,
}

impl Suite {
    pub const CONCRETE: [Suite; 6] = [
        Suite::Core,
        Suite::Symbols,
        Suite::Quantize,
        Suite::Projectors,
        Suite::Deform,
        Suite::Toeplitz,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Core => "core",
            Suite::Symbols => "symbols",
            Suite::Quantize => "quantize",
            Suite::Projectors => "projectors",
            Suite::Deform => "deform",
            Suite::Toeplitz => "toeplitz",
            Suite::All => "all",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::CONCRETE
            .iter()
            .chain(std::iter::once(&Suite::All))
            .copied()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown suite '{s}'")))
    }
}

/// Parameters of a verification run. Every field has a default, so a config
/// file only needs the fields it changes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuiteConfig {
    pub suites: Vec<Suite>,
    pub n_values: Vec<usize>,
    pub lambda_values: Vec<f64>,
    pub tau_values: Vec<f64>,
    /// Hermite truncation for `n = 1`.
    #[serde(rename = "N_max")]
    pub n_max: usize,
    /// Hermite truncation per coordinate for `n >= 2`.
    #[serde(rename = "N_max_multi")]
    pub n_max_multi: usize,
    /// Per-check tolerance overrides, keyed by check id.
    pub tolerances: BTreeMap<String, f64>,
    pub chern_grid: usize,
    pub toeplitz_n: usize,
    pub sphere_samples: usize,
    pub random_pairs: usize,
    pub unitary_samples: usize,
    pub seed: u64,
    /// Where to write the JSON report; CSV side tables go next to it.
    /// Not echoed into the report.
    #[serde(skip_serializing)]
    pub report: Option<String>,
    #[serde(skip)]
    pub jobs: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            suites: vec![Suite::All],
            n_values: vec![1, 2],
            lambda_values: vec![0.25, 0.5, 1.0],
            tau_values: vec![1.0, 1.5, 2.0, 3.0, 4.0],
            n_max: 24,
            n_max_multi: 10,
            tolerances: BTreeMap::new(),
            chern_grid: 512,
            toeplitz_n: 256,
            sphere_samples: 1000,
            random_pairs: 50,
            unitary_samples: 20,
            seed: 0,
            report: None,
            jobs: 1,
        }
    }
}

impl SuiteConfig {
    pub fn from_json_str(s: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(s).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::from_json_str(&text)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        if self.suites.is_empty() {
            return bad("no suites requested".into());
        }
        if self.n_values.is_empty() || self.n_values.iter().any(|&n| !(1..=2).contains(&n)) {
            return bad("n_values must be a non-empty subset of {1, 2}".into());
        }
        if self.lambda_values.is_empty() || self.lambda_values.iter().any(|&l| !(l > 0.0 && l.is_finite())) {
            return bad("lambda_values must be positive".into());
        }
        if self.tau_values.len() < 2 || self.tau_values.iter().any(|&t| !(1.0..=5.0).contains(&t)) {
            return bad("tau_values needs at least two values in [1, 5]".into());
        }
        if !(8..=64).contains(&self.n_max) {
            return bad("N_max must lie in [8, 64]".into());
        }
        if !(4..=16).contains(&self.n_max_multi) {
            return bad("N_max_multi must lie in [4, 16]".into());
        }
        if let Some((k, v)) = self.tolerances.iter().find(|(_, &v)| v.is_nan() || v <= 0.0) {
            return bad(format!("tolerance for '{k}' must be > 0, got {v}"));
        }
        if self.chern_grid < 16 || self.toeplitz_n < 64 {
            return bad("chern_grid must be >= 16 and toeplitz_n >= 64".into());
        }
        if self.sphere_samples == 0 || self.random_pairs == 0 || self.unitary_samples == 0 {
            return bad("sample counts must be positive".into());
        }
        Ok(())
    }

    /// The concrete suites selected, in canonical order.
    pub fn selected(&self) -> Vec<Suite> {
        if self.suites.contains(&Suite::All) {
            return Suite::CONCRETE.to_vec();
        }
        Suite::CONCRETE
            .iter()
            .copied()
            .filter(|s| self.suites.contains(s))
            .collect()
    }

    pub fn n_max_for(&self, n: usize) -> usize {
        if n == 1 {
            self.n_max
        } else {
            self.n_max_multi
        }
    }

    /// Parses `id=value` and stores it as a tolerance override.
    pub fn set_tolerance(&mut self, spec: &str) -> Result<()> {
        let (id, val) = spec
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("expected id=value, got '{spec}'")))?;
        let v: f64 = val
            .trim()
            .parse()
            .map_err(|_| Error::Config(format!("bad tolerance value '{val}'")))?;
        self.tolerances.insert(id.trim().to_string(), v);
        Ok(())
    }
}

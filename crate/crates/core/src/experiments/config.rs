use serde::{Deserialize, Serialize};

use crate::algorithms::{Registry, TopologyControl};
use crate::error::{Result, TopoError};

/// Monte-Carlo experiment description, read from JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub n: usize,
    /// Node densities `N`, with `pi R^2 = N / n`.
    pub densities: Vec<f64>,
    /// Algorithm descriptors, e.g. `alg1`, `alg2:2`, `kneigh:6:union`.
    pub algorithms: Vec<String>,
    pub trials: usize,
    pub seed: u64,
    /// Stretch exponents; empty disables stretch statistics.
    #[serde(default)]
    pub alphas: Vec<f64>,
    /// Node pairs sampled per trial for stretch statistics.
    #[serde(default = "default_pair_samples")]
    pub pair_samples: usize,
    /// Stretch statistics are gathered on the first this-many trials only.
    #[serde(default = "default_stretch_trials")]
    pub stretch_trials: usize,
    /// Equal-width node-index bins for per-index degree output.
    #[serde(default = "default_index_bins")]
    pub index_bins: usize,
}

fn default_pair_samples() -> usize {
    10_000
}

fn default_stretch_trials() -> usize {
    1000
}

fn default_index_bins() -> usize {
    50
}

impl ExperimentConfig {
    pub fn new(n: usize, densities: Vec<f64>, algorithms: Vec<String>, trials: usize, seed: u64) -> Self {
        ExperimentConfig {
            n,
            densities,
            algorithms,
            trials,
            seed,
            alphas: Vec::new(),
            pair_samples: default_pair_samples(),
            stretch_trials: default_stretch_trials(),
            index_bins: default_index_bins(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(TopoError::InvalidParameter(m));
        if self.n == 0 {
            return bad("n must be at least 1".into());
        }
        if self.trials == 0 {
            return bad("trials must be at least 1".into());
        }
        if self.densities.is_empty() || self.densities.iter().any(|d| !(d.is_finite() && *d > 0.0)) {
            return bad("densities must be a non-empty list of positive numbers".into());
        }
        if self.algorithms.is_empty() {
            return bad("at least one algorithm is required".into());
        }
        if self.alphas.iter().any(|a| !(a.is_finite() && *a >= 0.0)) {
            return bad("stretch exponents must be finite and >= 0".into());
        }
        if self.index_bins == 0 {
            return bad("index_bins must be at least 1".into());
        }
        self.parse_algorithms().map(|_| ())
    }

    pub fn parse_algorithms(&self) -> Result<Vec<Box<dyn TopologyControl>>> {
        let registry = Registry::builtin();
        self.algorithms.iter().map(|d| registry.create(d)).collect()
    }
}

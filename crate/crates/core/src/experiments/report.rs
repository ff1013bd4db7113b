//! Aggregation of trial reports and the CSV / JSON output set.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::Serialize;

use super::{ExperimentConfig, TrialReport};
use crate::algorithms::TopologyControl;
use crate::error::Result;
use crate::metrics::{penrose_prediction, DegreePmf, EmpiricalCdf, StretchHistogram};

/// Accumulated statistics for one (algorithm, density) pair.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupReport {
    pub algorithm: String,
    pub density: f64,
    pub trials: usize,
    pub connected: usize,
    pub gilbert_connected: usize,
    pub components_match: usize,
    /// `|E| / n` per trial, in trial order.
    pub normalized_edges: Vec<f64>,
    /// Fraction of nodes with degree at most 6, per trial.
    pub frac_degree_le6: Vec<f64>,
    pub degree_counts: BTreeMap<usize, u64>,
    pub max_degree_counts: BTreeMap<usize, u64>,
    /// Degree counts per node-index bin.
    pub index_bins: Vec<BTreeMap<usize, u64>>,
    pub stretch: Vec<(f64, StretchHistogram)>,
    pub bits_per_node_sum: [f64; 3],
    pub bits_trials: usize,
}

impl GroupReport {
    fn new(algorithm: String, density: f64, config: &ExperimentConfig) -> Self {
        GroupReport {
            algorithm,
            density,
            trials: 0,
            connected: 0,
            gilbert_connected: 0,
            components_match: 0,
            normalized_edges: Vec::new(),
            frac_degree_le6: Vec::new(),
            degree_counts: BTreeMap::new(),
            max_degree_counts: BTreeMap::new(),
            index_bins: vec![BTreeMap::new(); config.index_bins],
            stretch: config
                .alphas
                .iter()
                .map(|&a| (a, StretchHistogram::default()))
                .collect(),
            bits_per_node_sum: [0.0; 3],
            bits_trials: 0,
        }
    }

    fn absorb(&mut self, trial: &TrialReport) {
        let n = trial.degrees.len();
        self.trials += 1;
        self.connected += usize::from(trial.connected);
        self.gilbert_connected += usize::from(trial.gilbert_connected);
        self.components_match += usize::from(trial.components_match);
        self.normalized_edges.push(trial.normalized_edges());
        self.frac_degree_le6.push(trial.fraction_degree_at_most(6));
        *self.max_degree_counts.entry(trial.max_degree).or_insert(0) += 1;
        let bins = self.index_bins.len();
        for (ix, &d) in trial.degrees.iter().enumerate() {
            *self.degree_counts.entry(d as usize).or_insert(0) += 1;
            *self.index_bins[ix * bins / n].entry(d as usize).or_insert(0) += 1;
        }
        for ((alpha, acc), (a2, h)) in self.stretch.iter_mut().zip(&trial.stretch) {
            debug_assert_eq!(alpha, a2);
            acc.merge(h);
        }
        if let Some(bits) = trial.protocol_bits {
            self.bits_trials += 1;
            for (sum, b) in self.bits_per_node_sum.iter_mut().zip(bits) {
                *sum += b as f64 / n as f64;
            }
        }
    }

    pub fn connectivity_rate(&self) -> f64 {
        self.connected as f64 / self.trials as f64
    }

    pub fn gilbert_connectivity_rate(&self) -> f64 {
        self.gilbert_connected as f64 / self.trials as f64
    }

    pub fn degree_pmf(&self) -> Result<DegreePmf> {
        DegreePmf::from_counts(&self.degree_counts)
    }

    pub fn max_degree_pmf(&self) -> Result<DegreePmf> {
        DegreePmf::from_counts(&self.max_degree_counts)
    }

    pub fn edges_cdf(&self) -> Result<EmpiricalCdf> {
        EmpiricalCdf::from_samples(&self.normalized_edges)
    }

    pub fn stretch_for(&self, alpha: f64) -> Option<&StretchHistogram> {
        self.stretch.iter().find(|(a, _)| *a == alpha).map(|(_, h)| h)
    }

    pub fn summary(&self, n: usize) -> Result<GroupSummary> {
        let edges = self.edges_cdf()?;
        let min = self.normalized_edges.iter().copied().fold(f64::INFINITY, f64::min);
        let max = self.normalized_edges.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let le6_ok = self.frac_degree_le6.iter().filter(|&&f| f > 0.99).count();
        let range = crate::geometry::density_to_range(n, self.density);
        Ok(GroupSummary {
            algorithm: self.algorithm.clone(),
            density: self.density,
            trials: self.trials,
            connectivity_rate: self.connectivity_rate(),
            gilbert_connectivity_rate: self.gilbert_connectivity_rate(),
            component_preservation_rate: self.components_match as f64 / self.trials as f64,
            penrose_prediction: penrose_prediction(n, range),
            mean_degree: self.degree_pmf()?.mean(),
            normalized_edges_min: min,
            normalized_edges_median: edges.quantile(0.5),
            normalized_edges_q99: edges.quantile(0.99),
            normalized_edges_max: max,
            max_degree_observed: self.max_degree_counts.keys().next_back().copied().unwrap_or(0),
            frac_trials_deg_le6_above_099: le6_ok as f64 / self.trials as f64,
            mean_bits_per_node: (self.bits_trials > 0).then(|| {
                self.bits_per_node_sum.iter().sum::<f64>() / self.bits_trials as f64
            }),
            stretch_p_le_5: self
                .stretch
                .iter()
                .map(|(a, h)| (a.to_string(), h.prob_le_grid(400)))
                .collect(),
            stretch_inf_mass: self
                .stretch
                .iter()
                .map(|(a, h)| (a.to_string(), h.inf_mass()))
                .collect(),
        })
    }
}

/// Headline numbers for one (algorithm, density) pair, as written to
/// `summary.json`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroupSummary {
    pub algorithm: String,
    pub density: f64,
    pub trials: usize,
    pub connectivity_rate: f64,
    pub gilbert_connectivity_rate: f64,
    pub component_preservation_rate: f64,
    pub penrose_prediction: f64,
    pub mean_degree: f64,
    pub normalized_edges_min: f64,
    pub normalized_edges_median: f64,
    pub normalized_edges_q99: f64,
    pub normalized_edges_max: f64,
    pub max_degree_observed: usize,
    pub frac_trials_deg_le6_above_099: f64,
    pub mean_bits_per_node: Option<f64>,
    pub stretch_p_le_5: BTreeMap<String, f64>,
    pub stretch_inf_mass: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AggregateReport {
    pub config: ExperimentConfig,
    /// Indexed `[density][algorithm]` in config order.
    groups: Vec<Vec<GroupReport>>,
}

#[derive(Serialize)]
struct SummaryFile<'a> {
    config: &'a ExperimentConfig,
    groups: Vec<GroupSummary>,
}

impl AggregateReport {
    pub(super) fn new(config: &ExperimentConfig, algorithms: &[&dyn TopologyControl]) -> Self {
        AggregateReport {
            config: config.clone(),
            groups: config
                .densities
                .iter()
                .map(|&d| {
                    algorithms
                        .iter()
                        .map(|a| GroupReport::new(a.descriptor(), d, config))
                        .collect()
                })
                .collect(),
        }
    }

    pub(super) fn absorb(&mut self, density_ix: usize, algo_ix: usize, trial: &TrialReport) {
        self.groups[density_ix][algo_ix].absorb(trial);
    }

    pub fn groups(&self) -> impl Iterator<Item = &GroupReport> {
        self.groups.iter().flatten()
    }

    /// Group for a canonical descriptor and density.
    pub fn group(&self, algorithm: &str, density: f64) -> Option<&GroupReport> {
        self.groups()
            .find(|g| g.algorithm == algorithm && g.density == density)
    }

    pub fn summaries(&self) -> Result<Vec<GroupSummary>> {
        self.groups().map(|g| g.summary(self.config.n)).collect()
    }

    pub fn summary_json(&self) -> Result<String> {
        let file = SummaryFile {
            config: &self.config,
            groups: self.summaries()?,
        };
        Ok(serde_json::to_string_pretty(&file)? + "\n")
    }

    pub fn cdf_edges_csv(&self) -> Result<String> {
        let mut out = String::from("algorithm,N,value,cum_prob\n");
        for g in self.groups() {
            for (v, c) in g.edges_cdf()?.steps {
                writeln!(out, "{},{},{},{}", g.algorithm, g.density, v, c).unwrap();
            }
        }
        Ok(out)
    }

    pub fn pmf_degree_csv(&self) -> Result<String> {
        self.pmf_csv(|g| g.degree_pmf())
    }

    pub fn pmf_maxdeg_csv(&self) -> Result<String> {
        self.pmf_csv(|g| g.max_degree_pmf())
    }

    fn pmf_csv(&self, pmf: impl Fn(&GroupReport) -> Result<DegreePmf>) -> Result<String> {
        let mut out = String::from("algorithm,N,degree,mass\n");
        for g in self.groups() {
            for (d, m) in pmf(g)?.mass {
                writeln!(out, "{},{},{},{}", g.algorithm, g.density, d, m).unwrap();
            }
        }
        Ok(out)
    }

    pub fn cdf_stretch_csv(&self) -> String {
        let mut out = String::from("algorithm,N,alpha,t,cum_prob,inf_mass\n");
        for g in self.groups() {
            for (alpha, h) in &g.stretch {
                if h.total() == 0 {
                    continue;
                }
                let inf = h.inf_mass();
                for (t, c) in h.cdf() {
                    writeln!(out, "{},{},{},{},{},{}", g.algorithm, g.density, alpha, t, c, inf).unwrap();
                }
            }
        }
        out
    }

    /// Bins hold node ranks `bin_lo..=bin_hi` (1-based, in id order).
    pub fn per_index_degree_csv(&self) -> Result<String> {
        let n = self.config.n;
        let mut out = String::from("algorithm,N,bin_lo,bin_hi,mean,degree,mass\n");
        for g in self.groups() {
            let bins = g.index_bins.len();
            for (b, counts) in g.index_bins.iter().enumerate() {
                if counts.is_empty() {
                    continue;
                }
                let lo = (b * n).div_ceil(bins) + 1;
                let hi = ((b + 1) * n).div_ceil(bins);
                let pmf = DegreePmf::from_counts(counts)?;
                let mean = pmf.mean();
                for (d, m) in pmf.mass {
                    writeln!(out, "{},{},{},{},{},{},{}", g.algorithm, g.density, lo, hi, mean, d, m).unwrap();
                }
            }
        }
        Ok(out)
    }

    /// Writes the CSV set and `summary.json` into `dir`.
    pub fn write_to_dir(&self, dir: &Path) -> Result<()> {
        fs::create_dir_all(dir)?;
        fs::write(dir.join("cdf_edges.csv"), self.cdf_edges_csv()?)?;
        fs::write(dir.join("pmf_degree.csv"), self.pmf_degree_csv()?)?;
        fs::write(dir.join("pmf_maxdeg.csv"), self.pmf_maxdeg_csv()?)?;
        fs::write(dir.join("cdf_stretch.csv"), self.cdf_stretch_csv())?;
        fs::write(dir.join("per_index_degree.csv"), self.per_index_degree_csv()?)?;
        fs::write(dir.join("summary.json"), self.summary_json()?)?;
        Ok(())
    }
}

//! Monte-Carlo harness: uniform random placement, per-trial evaluation of
//! every configured algorithm, and an order-stable aggregation.
//!
//! Trial `t` of a run with master seed `s` uses the placement seeded by
//! [`trial_seed`]`(s, t)`. All densities and algorithms share that
//! placement, and no trial depends on any other, so the aggregate is the
//! same for any worker count and any execution order.

mod config;
mod constructions;
mod report;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

pub use config::ExperimentConfig;
pub use constructions::{construct_complete_instance, construct_degree10_instance};
pub use report::{AggregateReport, GroupReport, GroupSummary};

use crate::algorithms::TopologyControl;
use crate::error::{Result, TopoError};
use crate::geometry::{build_gilbert, DiskModel, PointSet};
use crate::graph::{component_labels, Topology};
use crate::metrics::{stretch_ratios, PairSample, StretchHistogram};
use crate::protocol::id_width;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of trial `index` under `master`.
pub fn trial_seed(master: u64, index: u64) -> u64 {
    splitmix64(master ^ splitmix64(index))
}

/// `n` points uniform on `[0, 1)^2`, ids `1..=n`, from a ChaCha8 stream.
pub fn generate_uniform_points(n: usize, seed: u64) -> Result<PointSet> {
    if n == 0 {
        return Err(TopoError::InvalidParameter("n must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    PointSet::from_coords((0..n).map(|_| (rng.gen::<f64>(), rng.gen::<f64>())))
}

/// Everything measured for one algorithm on one placement.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialReport {
    pub seed: u64,
    pub density: f64,
    pub algorithm: String,
    pub connected: bool,
    pub gilbert_connected: bool,
    /// Output has the same component partition as the Gilbert graph.
    pub components_match: bool,
    pub edge_count: usize,
    pub gilbert_edge_count: usize,
    /// Degree of each node, in id order.
    pub degrees: Vec<u32>,
    pub max_degree: usize,
    /// Per-alpha stretch distribution over the sampled pairs.
    pub stretch: Vec<(f64, StretchHistogram)>,
    /// Protocol bits per round, for the rule the protocol realizes.
    pub protocol_bits: Option<[u64; 3]>,
}

impl TrialReport {
    pub fn normalized_edges(&self) -> f64 {
        self.edge_count as f64 / self.degrees.len() as f64
    }

    pub fn fraction_degree_at_most(&self, d: u32) -> f64 {
        self.degrees.iter().filter(|&&x| x <= d).count() as f64 / self.degrees.len() as f64
    }

    pub fn mean_degree(&self) -> f64 {
        2.0 * self.edge_count as f64 / self.degrees.len() as f64
    }
}

/// Runs every algorithm on the placement drawn from `seed`.
pub fn run_instance(
    config: &ExperimentConfig,
    density: f64,
    algorithms: &[&dyn TopologyControl],
    seed: u64,
    with_stretch: bool,
) -> Result<Vec<TrialReport>> {
    let points = generate_uniform_points(config.n, seed)?;
    let model = DiskModel::from_density(config.n, density)?;
    let gilbert = build_gilbert(&points, &model);
    let gilbert_labels = component_labels(&gilbert);
    let gilbert_connected = gilbert_labels.iter().all(|&l| l == 0);

    algorithms
        .iter()
        .enumerate()
        .map(|(k, algo)| {
            let topo = algo.build(&points, &gilbert)?;
            let labels = component_labels(&topo);
            let stretch = if with_stretch {
                config
                    .alphas
                    .iter()
                    .map(|&alpha| {
                        let pairs = PairSample::Random {
                            m: config.pair_samples,
                            seed: trial_seed(seed, 1 + k as u64),
                        };
                        let mut h = StretchHistogram::default();
                        for r in stretch_ratios(&points, &gilbert, &topo, alpha, pairs)? {
                            h.add(r);
                        }
                        Ok((alpha, h))
                    })
                    .collect::<Result<Vec<_>>>()?
            } else {
                Vec::new()
            };
            let protocol_bits = algo.guarantees().protocol.then(|| protocol_bits(&gilbert, &topo));
            Ok(TrialReport {
                seed,
                density,
                algorithm: algo.descriptor(),
                connected: labels.iter().all(|&l| l == 0),
                gilbert_connected,
                components_match: labels == gilbert_labels,
                edge_count: topo.edge_count(),
                gilbert_edge_count: gilbert.edge_count(),
                degrees: topo.degrees().into_iter().map(|d| d as u32).collect(),
                max_degree: topo.max_degree(),
                stretch,
                protocol_bits,
            })
        })
        .collect()
}

// Each link of the lesser-neighborhood rule is announced once, by its
// larger endpoint, so round 3 carries exactly |E| ids in total.
fn protocol_bits(gilbert: &crate::graph::Adjacency, topo: &Topology) -> [u64; 3] {
    let w = id_width(crate::graph::UndirectedGraph::ids(gilbert));
    let n = topo.degrees().len() as u64;
    [w * n, w * 2 * gilbert.edge_count() as u64, w * topo.edge_count() as u64]
}

/// One algorithm on one placement; stretch statistics included when
/// `config.alphas` is non-empty.
pub fn run_trial(
    config: &ExperimentConfig,
    density: f64,
    algorithm: &dyn TopologyControl,
    seed: u64,
) -> Result<TrialReport> {
    let mut reports = run_instance(config, density, &[algorithm], seed, !config.alphas.is_empty())?;
    Ok(reports.remove(0))
}

const CHUNK: usize = 64;

/// Runs all trials for every density and algorithm. `workers = None` uses
/// rayon's global pool.
pub fn run_monte_carlo(config: &ExperimentConfig, workers: Option<usize>) -> Result<AggregateReport> {
    config.validate()?;
    let owned = config.parse_algorithms()?;
    let algorithms: Vec<&dyn TopologyControl> = owned.iter().map(|a| a.as_ref()).collect();
    let pool = match workers {
        Some(k) => Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(k.max(1))
                .build()
                .map_err(|e| TopoError::InvalidParameter(e.to_string()))?,
        ),
        None => None,
    };

    let mut report = AggregateReport::new(config, &algorithms);
    for (di, &density) in config.densities.iter().enumerate() {
        let mut start = 0;
        while start < config.trials {
            let end = (start + CHUNK).min(config.trials);
            let run_chunk = || {
                (start..end)
                    .into_par_iter()
                    .map(|t| {
                        let with_stretch = !config.alphas.is_empty() && t < config.stretch_trials;
                        run_instance(config, density, &algorithms, trial_seed(config.seed, t as u64), with_stretch)
                    })
                    .collect::<Result<Vec<_>>>()
            };
            let chunk = match &pool {
                Some(p) => p.install(run_chunk)?,
                None => run_chunk()?,
            };
            for per_algo in chunk {
                for (ai, trial) in per_algo.into_iter().enumerate() {
                    report.absorb(di, ai, &trial);
                }
            }
            start = end;
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_points() {
        assert_eq!(generate_uniform_points(50, 7).unwrap(), generate_uniform_points(50, 7).unwrap());
        assert_ne!(generate_uniform_points(50, 7).unwrap(), generate_uniform_points(50, 8).unwrap());
    }

    #[test]
    fn zero_points_rejected() {
        assert!(generate_uniform_points(0, 1).is_err());
    }

    #[test]
    fn points_in_unit_square() {
        let pts = generate_uniform_points(2000, 3).unwrap();
        assert!(pts.coords().iter().all(|p| (0.0..=1.0).contains(&p.x) && (0.0..=1.0).contains(&p.y)));
    }

    #[test]
    fn trial_seeds_differ() {
        let seeds: std::collections::BTreeSet<u64> = (0..1000).map(|t| trial_seed(42, t)).collect();
        assert_eq!(seeds.len(), 1000);
    }

    #[test]
    fn protocol_bit_formula_matches_simulation() {
        let pts = generate_uniform_points(300, 11).unwrap();
        let adj = build_gilbert(&pts, &DiskModel::from_density(300, 12.0).unwrap());
        let sim = crate::protocol::simulate_protocol(&adj);
        assert_eq!(protocol_bits(&adj, &sim.topology), sim.ledger.round_totals());
    }
}

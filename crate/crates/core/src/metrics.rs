//! Statistics over topologies: degree distributions, stretch factors and
//! empirical CDFs, plus the asymptotic connectivity prediction for random
//! geometric graphs.

use std::collections::BTreeMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Result, TopoError};
use crate::geometry::PointSet;
use crate::graph::{Adjacency, Topology, UndirectedGraph};
use crate::id::NodeId;
use crate::paths::{check_alpha, check_same_nodes, single_source_costs};

/// Probability mass over node degrees.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DegreePmf {
    pub mass: BTreeMap<usize, f64>,
}

impl DegreePmf {
    pub fn from_counts(counts: &BTreeMap<usize, u64>) -> Result<Self> {
        let total: u64 = counts.values().sum();
        if total == 0 {
            return Err(TopoError::Empty("degree counts"));
        }
        Ok(DegreePmf {
            mass: counts
                .iter()
                .filter(|(_, &c)| c > 0)
                .map(|(&d, &c)| (d, c as f64 / total as f64))
                .collect(),
        })
    }

    pub fn mean(&self) -> f64 {
        self.mass.iter().map(|(&d, &p)| d as f64 * p).sum()
    }

    pub fn prob(&self, degree: usize) -> f64 {
        self.mass.get(&degree).copied().unwrap_or(0.0)
    }

    pub fn prob_at_most(&self, degree: usize) -> f64 {
        self.mass.range(..=degree).map(|(_, &p)| p).sum()
    }

    pub fn max_support(&self) -> Option<usize> {
        self.mass.keys().next_back().copied()
    }
}

/// Empirical CDF of a sample that may contain `+inf`. Infinite values are
/// kept out of the steps and reported as `inf_mass`, so the last step
/// reaches `1 - inf_mass`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmpiricalCdf {
    /// Distinct finite values ascending, with `P(X <= value)`.
    pub steps: Vec<(f64, f64)>,
    pub inf_mass: f64,
    pub samples: usize,
}

impl EmpiricalCdf {
    pub fn from_samples(samples: &[f64]) -> Result<Self> {
        if samples.is_empty() {
            return Err(TopoError::Empty("CDF samples"));
        }
        if samples.iter().any(|x| x.is_nan()) {
            return Err(TopoError::InvalidParameter("NaN in CDF samples".into()));
        }
        let total = samples.len() as f64;
        let mut finite: Vec<f64> = samples.iter().copied().filter(|x| x.is_finite()).collect();
        finite.sort_by(f64::total_cmp);
        let mut steps: Vec<(f64, f64)> = Vec::new();
        for (k, &x) in finite.iter().enumerate() {
            let cum = (k + 1) as f64 / total;
            match steps.last_mut() {
                Some(last) if last.0 == x => last.1 = cum,
                _ => steps.push((x, cum)),
            }
        }
        Ok(EmpiricalCdf {
            steps,
            inf_mass: (samples.len() - finite.len()) as f64 / total,
            samples: samples.len(),
        })
    }

    /// `P(X <= t)`.
    pub fn prob_le(&self, t: f64) -> f64 {
        let k = self.steps.partition_point(|&(x, _)| x <= t);
        if k == 0 {
            0.0
        } else {
            self.steps[k - 1].1
        }
    }

    /// Smallest sample value `x` with `P(X <= x) >= q`; `+inf` if the
    /// finite mass never reaches `q`.
    pub fn quantile(&self, q: f64) -> f64 {
        self.steps
            .iter()
            .find(|&&(_, c)| c >= q - 1e-12)
            .map_or(f64::INFINITY, |&(x, _)| x)
    }
}

/// Cost ratio between `topo` and the Gilbert graph for one pair. Pairs the
/// Gilbert graph cannot connect have no stretch and are rejected.
pub fn stretch_factor(
    points: &PointSet,
    gilbert: &Adjacency,
    topo: &Topology,
    i: &NodeId,
    j: &NodeId,
    alpha: f64,
) -> Result<f64> {
    check_inputs(points, gilbert, topo, alpha)?;
    if i == j {
        return Err(TopoError::SameEndpoints(i.clone()));
    }
    let a = gilbert.require(i)?;
    let b = gilbert.require(j)?;
    let base = single_source_costs(points.coords(), gilbert, a, alpha)[b];
    if base.is_infinite() {
        return Err(TopoError::UndefinedStretch(i.clone(), j.clone()));
    }
    let sub = single_source_costs(points.coords(), topo, a, alpha)[b];
    Ok(cost_ratio(sub, base))
}

fn check_inputs(points: &PointSet, gilbert: &Adjacency, topo: &Topology, alpha: f64) -> Result<()> {
    check_alpha(alpha)?;
    check_same_nodes(points, gilbert)?;
    check_same_nodes(points, topo)
}

// Zero-cost base paths only occur between coincident points.
fn cost_ratio(sub: f64, base: f64) -> f64 {
    if base == 0.0 {
        if sub == 0.0 {
            1.0
        } else {
            f64::INFINITY
        }
    } else {
        sub / base
    }
}

/// Which node pairs a stretch distribution is computed over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairSample {
    All,
    /// `m` pairs drawn uniformly (with replacement) from `{(i, j): i < j}`.
    /// When `m` is at least the number of pairs, every pair is used once.
    Random { m: usize, seed: u64 },
}

/// The pairs selected by `sample`, as position pairs `(a, b)` with `a < b`.
pub fn sample_pairs(n: usize, sample: PairSample) -> Vec<(usize, usize)> {
    let all_count = n * n.saturating_sub(1) / 2;
    match sample {
        PairSample::Random { m, seed } if m < all_count => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..m)
                .map(|_| {
                    let a = rng.gen_range(0..n);
                    let mut b = rng.gen_range(0..n - 1);
                    if b >= a {
                        b += 1;
                    }
                    (a.min(b), a.max(b))
                })
                .collect()
        }
        _ => (0..n)
            .flat_map(|a| ((a + 1)..n).map(move |b| (a, b)))
            .collect(),
    }
}

/// Stretch ratios over sampled pairs; pairs disconnected in the Gilbert
/// graph are skipped. Returned in the order the pairs were drawn.
pub fn stretch_ratios(
    points: &PointSet,
    gilbert: &Adjacency,
    topo: &Topology,
    alpha: f64,
    sample: PairSample,
) -> Result<Vec<f64>> {
    check_inputs(points, gilbert, topo, alpha)?;
    let pairs = sample_pairs(points.len(), sample);
    let mut by_source: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
    for (k, &(a, b)) in pairs.iter().enumerate() {
        by_source.entry(a).or_default().push((k, b));
    }
    let mut out = vec![f64::NAN; pairs.len()];
    for (src, targets) in by_source {
        let base = single_source_costs(points.coords(), gilbert, src, alpha);
        let sub = single_source_costs(points.coords(), topo, src, alpha);
        for (k, b) in targets {
            if base[b].is_finite() {
                out[k] = cost_ratio(sub[b], base[b]);
            }
        }
    }
    out.retain(|x| !x.is_nan());
    Ok(out)
}

pub fn stretch_cdf(
    points: &PointSet,
    gilbert: &Adjacency,
    topo: &Topology,
    alpha: f64,
    sample: PairSample,
) -> Result<EmpiricalCdf> {
    EmpiricalCdf::from_samples(&stretch_ratios(points, gilbert, topo, alpha, sample)?)
}

fn require_nonempty(topologies: &[Topology]) -> Result<()> {
    if topologies.is_empty() {
        Err(TopoError::Empty("topology list"))
    } else {
        Ok(())
    }
}

/// Degree of a uniformly chosen node, pooled over all topologies.
pub fn degree_pmf(topologies: &[Topology]) -> Result<DegreePmf> {
    require_nonempty(topologies)?;
    let mut counts = BTreeMap::new();
    for t in topologies {
        for d in t.degrees() {
            *counts.entry(d).or_insert(0u64) += 1;
        }
    }
    DegreePmf::from_counts(&counts)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IndexDegree {
    pub mean: f64,
    pub pmf: DegreePmf,
}

/// Degree distribution of each individual node across topologies over the
/// same node set.
pub fn per_index_degree(topologies: &[Topology]) -> Result<BTreeMap<NodeId, IndexDegree>> {
    require_nonempty(topologies)?;
    let ids = topologies[0].ids();
    if topologies.iter().any(|t| t.ids() != ids) {
        return Err(TopoError::NodeSetMismatch);
    }
    let mut counts: Vec<BTreeMap<usize, u64>> = vec![BTreeMap::new(); ids.len()];
    for t in topologies {
        for (ix, d) in t.degrees().into_iter().enumerate() {
            *counts[ix].entry(d).or_insert(0) += 1;
        }
    }
    ids.iter()
        .zip(counts.iter())
        .map(|(id, c)| {
            let pmf = DegreePmf::from_counts(c)?;
            Ok((id.clone(), IndexDegree { mean: pmf.mean(), pmf }))
        })
        .collect()
}

pub fn max_degree_pmf(topologies: &[Topology]) -> Result<DegreePmf> {
    require_nonempty(topologies)?;
    let mut counts = BTreeMap::new();
    for t in topologies {
        *counts.entry(t.max_degree()).or_insert(0u64) += 1;
    }
    DegreePmf::from_counts(&counts)
}

/// `alpha = pi n R^2 - log n`.
pub fn penrose_alpha(n: usize, range: f64) -> f64 {
    std::f64::consts::PI * n as f64 * range * range - (n as f64).ln()
}

/// Limiting connectivity probability `exp(-exp(-alpha))` of a random
/// geometric graph on `n` uniform points with range `R`.
pub fn penrose_prediction(n: usize, range: f64) -> f64 {
    (-(-penrose_alpha(n, range)).exp()).exp()
}

/// Fixed-grid accumulator for stretch distributions pooled over many
/// trials: counts `ratio <= 1 + k/100` for `k = 0..=steps`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StretchHistogram {
    /// `counts[k]` = samples with ratio in `(t_{k-1}, t_k]`.
    counts: Vec<u64>,
    above: u64,
    infinite: u64,
    total: u64,
}

pub const STRETCH_GRID_STEPS: usize = 900;

impl Default for StretchHistogram {
    fn default() -> Self {
        StretchHistogram {
            counts: vec![0; STRETCH_GRID_STEPS + 1],
            above: 0,
            infinite: 0,
            total: 0,
        }
    }
}

impl StretchHistogram {
    pub fn grid_point(k: usize) -> f64 {
        (100 + k) as f64 / 100.0
    }

    pub fn add(&mut self, ratio: f64) {
        self.total += 1;
        if ratio.is_infinite() {
            self.infinite += 1;
            return;
        }
        let last = Self::grid_point(STRETCH_GRID_STEPS);
        if ratio > last {
            self.above += 1;
            return;
        }
        let mut k = (((ratio - 1.0) * 100.0).ceil().max(0.0) as usize).min(STRETCH_GRID_STEPS);
        while k > 0 && ratio <= Self::grid_point(k - 1) {
            k -= 1;
        }
        while ratio > Self::grid_point(k) {
            k += 1;
        }
        self.counts[k] += 1;
    }

    pub fn merge(&mut self, other: &StretchHistogram) {
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
        self.above += other.above;
        self.infinite += other.infinite;
        self.total += other.total;
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn inf_mass(&self) -> f64 {
        if self.total == 0 {
            0.0
        } else {
            self.infinite as f64 / self.total as f64
        }
    }

    /// `(t_k, P(ratio <= t_k))` along the grid.
    pub fn cdf(&self) -> Vec<(f64, f64)> {
        let mut acc = 0;
        self.counts
            .iter()
            .enumerate()
            .map(|(k, &c)| {
                acc += c;
                (Self::grid_point(k), acc as f64 / self.total.max(1) as f64)
            })
            .collect()
    }

    /// `P(ratio <= t)` for a grid point `t`.
    pub fn prob_le_grid(&self, k: usize) -> f64 {
        let hits: u64 = self.counts[..=k.min(STRETCH_GRID_STEPS)].iter().sum();
        hits as f64 / self.total.max(1) as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Adjacency;

    fn star(k: u64) -> Topology {
        let adj = Adjacency::from_edges(
            (1..=k + 1).map(NodeId::Num),
            (2..=k + 1).map(|j| (NodeId::Num(1), NodeId::Num(j))),
        )
        .unwrap();
        Topology::full(&adj)
    }

    #[test]
    fn star_max_degree_point_mass() {
        let pmf = max_degree_pmf(&[star(4)]).unwrap();
        assert_eq!(pmf.mass, BTreeMap::from([(4, 1.0)]));
        let d = degree_pmf(&[star(4)]).unwrap();
        assert!((d.prob(1) - 0.8).abs() < 1e-12);
        assert!((d.mean() - 1.6).abs() < 1e-12);
    }

    #[test]
    fn empty_trial_list_rejected() {
        assert!(degree_pmf(&[]).is_err());
        assert!(max_degree_pmf(&[]).is_err());
        assert!(per_index_degree(&[]).is_err());
    }

    #[test]
    fn penrose_at_zero_alpha() {
        let n = 500;
        let r = ((n as f64).ln() / (std::f64::consts::PI * n as f64)).sqrt();
        assert!((penrose_prediction(n, r) - (-1f64).exp()).abs() < 1e-12);
    }

    #[test]
    fn penrose_tends_to_one() {
        assert!(penrose_prediction(1000, 1.0) > 1.0 - 1e-12);
        let p20 = penrose_prediction(1000, (20.0 / (std::f64::consts::PI * 1000.0)).sqrt());
        let alpha = 20.0 - 1000f64.ln();
        assert!((alpha - 13.0922).abs() < 1e-3);
        assert!((p20 - (-(-alpha).exp()).exp()).abs() < 1e-15);
        assert!(p20 > 0.999997 && p20 < 0.999999);
    }

    #[test]
    fn cdf_handles_infinity() {
        let cdf = EmpiricalCdf::from_samples(&[1.0, 2.0, 2.0, f64::INFINITY]).unwrap();
        assert_eq!(cdf.steps, vec![(1.0, 0.25), (2.0, 0.75)]);
        assert_eq!(cdf.inf_mass, 0.25);
        assert_eq!(cdf.prob_le(1.5), 0.25);
        assert_eq!(cdf.prob_le(0.5), 0.0);
        assert_eq!(cdf.quantile(0.5), 2.0);
        assert!(cdf.quantile(0.9).is_infinite());
    }

    #[test]
    fn cdf_rejects_empty_and_nan() {
        assert!(EmpiricalCdf::from_samples(&[]).is_err());
        assert!(EmpiricalCdf::from_samples(&[f64::NAN]).is_err());
    }

    #[test]
    fn histogram_grid_boundaries() {
        let mut h = StretchHistogram::default();
        for r in [1.0, 1.005, 1.01, 5.0, 5.0000001, 12.0, f64::INFINITY] {
            h.add(r);
        }
        assert_eq!(h.total(), 7);
        assert_eq!(h.prob_le_grid(0), 1.0 / 7.0);
        assert_eq!(h.prob_le_grid(1), 3.0 / 7.0);
        assert_eq!(StretchHistogram::grid_point(400), 5.0);
        assert_eq!(h.prob_le_grid(400), 4.0 / 7.0);
        assert_eq!(h.prob_le_grid(401), 5.0 / 7.0);
        assert!((h.inf_mass() - 1.0 / 7.0).abs() < 1e-15);
    }

    #[test]
    fn all_pairs_enumeration() {
        assert_eq!(sample_pairs(3, PairSample::All), vec![(0, 1), (0, 2), (1, 2)]);
        assert_eq!(
            sample_pairs(3, PairSample::Random { m: 3, seed: 1 }),
            sample_pairs(3, PairSample::All)
        );
        let drawn = sample_pairs(50, PairSample::Random { m: 100, seed: 9 });
        assert_eq!(drawn.len(), 100);
        assert!(drawn.iter().all(|&(a, b)| a < b && b < 50));
    }
}

//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

mod common;

use std::time::Instant;

use common::*;
use topoctl_core::algorithms::{alg1_choice, parse_algorithm, run_alg1, run_alg2, run_local_scheduled, Alg1};
use topoctl_core::experiments::{
    construct_complete_instance, construct_degree10_instance, generate_uniform_points, run_monte_carlo, trial_seed,
    AggregateReport, ExperimentConfig,
};
use topoctl_core::graph::{component_labels, connected_components, induced_components, is_connected};
use topoctl_core::metrics::{penrose_prediction, StretchHistogram};
use topoctl_core::paths::path_cost;
use topoctl_core::protocol::{complexity_profile, simulate_protocol, DensityScaling};
use topoctl_core::verify::random_schedules;
use topoctl_core::{build_gilbert, DiskModel, LocalView, NodeId, UndirectedGraph};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn within(value: f64, target: f64, tol: f64) -> bool {
    (value - target).abs() <= tol
}

const SEED: u64 = 0x5eed_2024;

/// Criteria 1 and 2 share their instances.
fn structural() -> (Outcome, Outcome) {
    let mut instances = 0;
    let mut partition_failures = 0;
    let mut worst_edges = 0.0f64;
    let mut worst_degree = 0;
    let mut worst_initiated = 0;
    for &n in &[20usize, 100, 1000] {
        for &density in &[5.0, 10.0, 20.0, 30.0] {
            let model = DiskModel::from_density(n, density).unwrap();
            for t in 0..500u64 {
                let pts = generate_uniform_points(n, trial_seed(SEED ^ (n as u64) << 8 ^ density as u64, t)).unwrap();
                let adj = build_gilbert(&pts, &model);
                let topo = run_alg1(&adj);
                instances += 1;
                if component_labels(&topo) != component_labels(&adj) {
                    partition_failures += 1;
                }
                worst_edges = worst_edges.max(topo.edge_count() as f64 / n as f64);
                worst_degree = worst_degree.max(topo.max_degree());
                for ix in 0..n {
                    let k = alg1_choice(&LocalView::from_adjacency(&adj, ix)).targets.len();
                    worst_initiated = worst_initiated.max(k);
                }
            }
        }
    }
    (
        outcome(
            partition_failures == 0,
            format!("{instances} instances, {partition_failures} partition mismatches"),
        ),
        outcome(
            worst_edges <= 5.0 && worst_degree <= 10 && worst_initiated <= 5,
            format!(
                "{instances} instances: max |E|/n={worst_edges:.3}, max degree={worst_degree}, max initiated={worst_initiated}"
            ),
        ),
    )
}

fn degree_ten() -> Outcome {
    let model = DiskModel::new(1.0).unwrap();
    let pts = construct_degree10_instance(&model);
    let adj = build_gilbert(&pts, &model);
    let topo = run_alg1(&adj);
    let six = adj.index_of(&NodeId::Num(6)).unwrap();
    let d = topo.degrees()[six];
    outcome(d == 10 && pts.len() == 11, format!("11 nodes, degree of node 6 = {d}"))
}

fn order_and_protocol() -> Outcome {
    let mut bad = 0;
    let n = 300;
    let model = DiskModel::from_density(n, 15.0).unwrap();
    for t in 0..100u64 {
        let pts = generate_uniform_points(n, trial_seed(SEED ^ 4, t)).unwrap();
        let adj = build_gilbert(&pts, &model);
        let reference = run_alg1(&adj);
        for plan in random_schedules(n, 10, t) {
            if run_local_scheduled(&adj, &Alg1, &plan).unwrap() != reference {
                bad += 1;
            }
        }
        if simulate_protocol(&adj).topology != reference {
            bad += 1;
        }
    }
    outcome(bad == 0, format!("100 instances x (10 schedules + protocol), {bad} mismatches"))
}

fn alg2_bounds() -> Outcome {
    let n = 200;
    let model = DiskModel::from_density(n, 15.0).unwrap();
    let mut violations = Vec::new();
    let mut checked = [0usize; 3];
    let mut t = 0u64;
    while checked.iter().any(|&c| c < 200) {
        let pts = generate_uniform_points(n, trial_seed(SEED ^ 5, t)).unwrap();
        t += 1;
        let adj = build_gilbert(&pts, &model);
        if !is_connected(&adj) {
            continue;
        }
        for delta in 1..=3usize {
            if checked[delta - 1] >= 200 {
                continue;
            }
            checked[delta - 1] += 1;
            let topo = run_alg2(&adj, delta).unwrap();
            let cap = delta.max(5);
            if !is_connected(&topo) {
                violations.push(format!("delta={delta} disconnected"));
            }
            if topo.edge_count() > cap * n {
                violations.push(format!("delta={delta} edges {}", topo.edge_count()));
            }
            let deg = topo.degrees();
            for ix in 0..n {
                if deg[ix] < adj.degree(ix).min(delta) || deg[ix] > cap + 10 * delta {
                    violations.push(format!("delta={delta} degree {} at {ix}", deg[ix]));
                }
            }
            if delta == 1 && topo != run_alg1(&adj) {
                violations.push("delta=1 differs from alg1".into());
            }
        }
    }
    outcome(
        violations.is_empty(),
        match violations.first() {
            None => "200 connected instances per delta in 1..=3, 0 violations".to_string(),
            Some(v) => format!("{} violations, first: {v}", violations.len()),
        },
    )
}

fn variant_blowup() -> Outcome {
    let model = DiskModel::new(1.0).unwrap();
    let pts = construct_complete_instance(100, 0.5, &model).unwrap();
    let adj = build_gilbert(&pts, &model);
    let topo = parse_algorithm("variant:min").unwrap().build(&pts, &adj).unwrap();
    let d1 = topo.degrees()[adj.index_of(&NodeId::Num(1)).unwrap()];
    let connected = is_connected(&topo);
    outcome(d1 == 99 && connected, format!("degree of node 1 = {d1}, connected = {connected}"))
}

fn oracles() -> Outcome {
    let mut mismatches = 0;
    for seed in 0..1000u64 {
        let size = 1 + (seed % 8) as usize;
        let pts = random_points(size, seed, 1.0);
        let range = 0.2 + (seed % 7) as f64 * 0.08;
        let adj = build_gilbert(&pts, &DiskModel::new(range).unwrap());
        let m = disk_matrix(pts.coords(), range);
        if to_matrix(&adj) != m || is_connected(&adj) != matrix_connected(&m) {
            mismatches += 1;
        }
        let all: Vec<usize> = (0..size).collect();
        let comps: Vec<Vec<usize>> = connected_components(&adj)
            .blocks
            .iter()
            .map(|b| b.iter().map(|id| adj.index_of(id).unwrap()).collect())
            .collect();
        if comps != union_find_blocks(&m, &all) {
            mismatches += 1;
        }
        let subset: Vec<usize> = (0..size).filter(|k| (seed.wrapping_mul(0x9e37_79b9) >> k) & 1 == 1).collect();
        let sub_ids: Vec<NodeId> = subset.iter().map(|&k| pts.ids()[k].clone()).collect();
        let blocks: Vec<Vec<usize>> = induced_components(&adj, &sub_ids)
            .unwrap()
            .blocks
            .iter()
            .map(|b| b.iter().map(|id| adj.index_of(id).unwrap()).collect())
            .collect();
        if blocks != union_find_blocks(&m, &subset) {
            mismatches += 1;
        }
        for alpha in [0.0, 1.0, 2.0] {
            for a in 0..size {
                for b in 0..size {
                    if a != b {
                        let c = path_cost(&pts, &adj, &pts.ids()[a], &pts.ids()[b], alpha).unwrap();
                        if !relative_eq(c, enumerate_min_cost(&m, pts.coords(), a, b, alpha)) {
                            mismatches += 1;
                        }
                    }
                }
            }
        }
    }
    outcome(mismatches == 0, format!("1000 seeds with n <= 8, {mismatches} mismatches"))
}

fn monte_carlo(densities: Vec<f64>, algorithms: &[&str], trials: usize, alphas: Vec<f64>) -> AggregateReport {
    let mut cfg = ExperimentConfig::new(1000, densities, algorithms.iter().map(|s| s.to_string()).collect(), trials, SEED);
    cfg.alphas = alphas;
    cfg.stretch_trials = 500;
    cfg.pair_samples = 10_000;
    run_monte_carlo(&cfg, None).unwrap()
}

fn main() {
    let started = Instant::now();
    let mut results: Vec<(u32, &str, Outcome)> = Vec::new();
    let mut report = |id: u32, name: &'static str, o: Outcome| {
        println!(
            "{} criterion {id:>2} {name}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
        results.push((id, name, o));
    };

    let t0 = Instant::now();
    let (mut c1, c2) = structural();
    // The budget covers this loop together with the bound checks of criterion 2.
    let secs = t0.elapsed().as_secs_f64();
    c1.pass &= secs < 120.0;
    c1.detail += &format!(" in {secs:.0}s (limit 120s)");
    report(1, "connectivity preservation", c1);
    report(2, "worst-case bounds", c2);
    report(3, "degree-10 tightness", degree_ten());
    report(4, "order independence and protocol equivalence", order_and_protocol());
    report(5, "minimum-degree rule bounds", alg2_bounds());
    report(6, "variant degree blow-up", variant_blowup());
    report(7, "oracle equivalence", oracles());

    let sparse_dense = monte_carlo(vec![10.0, 30.0], &["gilbert", "alg1"], 5000, vec![]);
    let mid = monte_carlo(
        vec![20.0],
        &["gilbert", "alg1", "xtc", "kneigh:6:union", "kneigh:5:union", "kneigh:6:intersection", "kneigh:5:intersection"],
        5000,
        vec![0.0],
    );
    let group = |alg: &str, d: f64| {
        if d == 20.0 {
            mid.group(alg, d).unwrap()
        } else {
            sparse_dense.group(alg, d).unwrap()
        }
    };

    // 8: Gilbert connectivity.
    let mut ok = true;
    let mut parts = Vec::new();
    for (d, target) in [(10.0, 0.5654), (20.0, 0.9922), (30.0, 0.9996)] {
        let g = group("gilbert", d);
        let rate = g.gilbert_connectivity_rate();
        ok &= g.trials >= 5000 && within(rate, target, 0.015);
        let r = (d / (std::f64::consts::PI * 1000.0)).sqrt();
        parts.push(format!(
            "N={d}: {rate:.4} (target {target}, asymptotic {:.4})",
            penrose_prediction(1000, r)
        ));
    }
    report(8, "Gilbert connectivity", outcome(ok, parts.join("; ")));

    // 9: normalized edge counts.
    let mut ok = true;
    let mut parts = Vec::new();
    for d in [10.0, 20.0, 30.0] {
        let g = group("alg1", d);
        let lo = g.normalized_edges.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = g.normalized_edges.iter().copied().fold(0.0, f64::max);
        ok &= lo >= 1.02 && hi <= 1.14;
        parts.push(format!("N={d}: [{lo:.4}, {hi:.4}]"));
    }
    let q99 = group("alg1", 20.0).edges_cdf().unwrap().quantile(0.99);
    ok &= q99 <= 1.09;
    parts.push(format!("q99 at N=20 = {q99:.4}"));
    report(9, "normalized edge counts", outcome(ok, parts.join("; ")));

    // 10: mean degrees.
    let m1 = group("alg1", 20.0).degree_pmf().unwrap().mean();
    let mx = group("xtc", 20.0).degree_pmf().unwrap().mean();
    let mg = group("gilbert", 20.0).degree_pmf().unwrap().mean();
    report(
        10,
        "mean degrees at N=20",
        outcome(
            within(m1, 2.12, 0.05) && within(mx, 2.50, 0.05) && within(mg, 18.63, 0.3),
            format!("alg1 {m1:.4} (2.12), xtc {mx:.4} (2.50), gilbert {mg:.4} (18.63)"),
        ),
    );

    // 11: k-Neigh connectivity, union mode first.
    let mut ok = true;
    let mut parts = Vec::new();
    for (k, target) in [(6, 0.9904), (5, 0.9681)] {
        let u = group(&format!("kneigh:{k}:union"), 20.0).connectivity_rate();
        let i = group(&format!("kneigh:{k}:intersection"), 20.0).connectivity_rate();
        let hit = within(u, target, 0.015) || within(i, target, 0.015);
        ok &= hit;
        parts.push(format!("k={k}: union {u:.4}, intersection {i:.4} (target {target})"));
    }
    report(11, "k-Neigh connectivity", outcome(ok, parts.join("; ")));

    // 12: max-degree rarity.
    let mut ok = true;
    let mut parts = Vec::new();
    for d in [10.0, 20.0, 30.0] {
        let g = group("alg1", d);
        let worst = g.max_degree_counts.keys().next_back().copied().unwrap_or(0);
        let high: u64 = g.max_degree_counts.range(8..).map(|(_, c)| c).sum();
        ok &= high == 0 && g.trials >= 1000;
        parts.push(format!("N={d}: max {worst} over {} trials", g.trials));
    }
    report(12, "max-degree rarity", outcome(ok, parts.join("; ")));

    // 13: hop stretch.
    let h: &StretchHistogram = group("alg1", 20.0).stretch_for(0.0).unwrap();
    let p5 = h.prob_le_grid(400);
    report(
        13,
        "hop stretch",
        outcome(
            p5 >= 0.88 && h.total() >= 500 * 9_000,
            format!("P(ratio <= 5) = {p5:.4} over {} pairs, inf mass {:.5}", h.total(), h.inf_mass()),
        ),
    );

    // 14: low-degree dominance and protocol cost growth.
    let g30 = group("alg1", 30.0);
    let frac = g30.frac_degree_le6.iter().filter(|&&f| f > 0.99).count() as f64 / g30.trials as f64;
    let rows = complexity_profile(&[250, 1000, 4000], DensityScaling::Threshold, 20, SEED).unwrap();
    let mut growth_ok = true;
    let mut parts = vec![format!("N=30 trials with >99% degree<=6: {frac:.4}")];
    for w in rows.windows(2) {
        let ratio = w[1].mean_bits / w[0].mean_bits;
        let bound = ((w[1].n as f64).ln() / (w[0].n as f64).ln()).powi(2) * 1.2;
        growth_ok &= ratio <= bound;
        parts.push(format!(
            "bits {}->{}: {:.1}->{:.1}, ratio {ratio:.3} <= {bound:.3}",
            w[0].n, w[1].n, w[0].mean_bits, w[1].mean_bits
        ));
    }
    report(14, "degree concentration and protocol cost growth", outcome(frac >= 0.99 && growth_ok, parts.join("; ")));

    let failed: Vec<u32> = results.iter().filter(|(_, _, o)| !o.pass).map(|(id, _, _)| *id).collect();
    println!(
        "acceptance: {} of {} criteria passed in {:.0}s",
        results.len() - failed.len(),
        results.len(),
        started.elapsed().as_secs_f64()
    );
    if !failed.is_empty() {
        println!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}

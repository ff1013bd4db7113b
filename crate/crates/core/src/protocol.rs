//! Message-level simulation of the three-round protocol that realizes the
//! lesser-neighborhood rule in a network:
//!
//! 1. every node broadcasts a hello carrying its id;
//! 2. every node broadcasts the ids it heard in round 1;
//! 3. every node computes its choice offline and broadcasts the chosen ids.
//!
//! Links are reliable local broadcasts. A node's view is assembled only from
//! the messages it received.

use std::collections::BTreeMap;
use std::io::Write;

use serde::Serialize;

use crate::algorithms::alg1_choice;
use crate::error::{Result, TopoError};
use crate::experiments::{generate_uniform_points, trial_seed};
use crate::geometry::{build_gilbert, DiskModel};
use crate::graph::{Adjacency, Topology, UndirectedGraph};
use crate::id::NodeId;
use crate::local::LocalView;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RoundMessage {
    pub round: u8,
    pub sender: NodeId,
    pub payload: Vec<NodeId>,
}

/// Bits each node sends per round, with every id encoded in a fixed-width
/// word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BitLedger {
    pub id_width: u64,
    pub per_node: BTreeMap<NodeId, [u64; 3]>,
}

impl BitLedger {
    fn new(id_width: u64) -> Self {
        BitLedger {
            id_width,
            per_node: BTreeMap::new(),
        }
    }

    fn charge(&mut self, msg: &RoundMessage) {
        let slot = self.per_node.entry(msg.sender.clone()).or_insert([0; 3]);
        slot[usize::from(msg.round - 1)] += self.id_width * msg.payload.len() as u64;
    }

    pub fn round_totals(&self) -> [u64; 3] {
        let mut t = [0; 3];
        for bits in self.per_node.values() {
            for r in 0..3 {
                t[r] += bits[r];
            }
        }
        t
    }

    pub fn total(&self) -> u64 {
        self.round_totals().iter().sum()
    }

    pub fn mean_per_node(&self) -> f64 {
        if self.per_node.is_empty() {
            0.0
        } else {
            self.total() as f64 / self.per_node.len() as f64
        }
    }
}

/// `ceil(log2 n)` bits for numeric ids; `8 * len` bits for the longest
/// byte-string id.
pub fn id_width(ids: &[NodeId]) -> u64 {
    let n = ids.len() as u64;
    let numeric = if n <= 1 { 0 } else { u64::from(64 - (n - 1).leading_zeros()) };
    ids.iter()
        .map(|id| match id {
            NodeId::Num(_) => numeric,
            NodeId::Label(b) => 8 * b.len() as u64,
        })
        .max()
        .unwrap_or(0)
}

#[derive(Debug, Clone)]
pub struct ProtocolOutcome {
    pub topology: Topology,
    pub ledger: BitLedger,
    pub transcript: Vec<RoundMessage>,
}

impl ProtocolOutcome {
    /// One JSON object per line: `{"round":r,"sender":id,"payload":[ids]}`.
    pub fn write_transcript<W: Write>(&self, mut out: W) -> Result<()> {
        for msg in &self.transcript {
            serde_json::to_writer(&mut out, msg)?;
            out.write_all(b"\n")?;
        }
        Ok(())
    }
}

pub fn simulate_protocol(adj: &Adjacency) -> ProtocolOutcome {
    let order: Vec<usize> = (0..adj.node_count()).collect();
    simulate_protocol_scheduled(adj, &order).expect("identity order is a permutation")
}

/// Runs the protocol with every round's broadcasts issued in `order`, which
/// must be a permutation of the node positions.
pub fn simulate_protocol_scheduled(adj: &Adjacency, order: &[usize]) -> Result<ProtocolOutcome> {
    let n = adj.node_count();
    if !is_permutation(order, n) {
        return Err(TopoError::InvalidParameter(
            "protocol broadcast order must be a permutation of the nodes".into(),
        ));
    }
    let ids = adj.ids();
    let mut ledger = BitLedger::new(id_width(ids));
    let mut transcript = Vec::with_capacity(3 * n);

    let mut broadcast = |msg: RoundMessage, ledger: &mut BitLedger| {
        ledger.charge(&msg);
        transcript.push(msg.clone());
        msg
    };

    // round 1: hello
    let mut heard: Vec<Vec<NodeId>> = vec![Vec::new(); n];
    for &s in order {
        let msg = broadcast(
            RoundMessage {
                round: 1,
                sender: ids[s].clone(),
                payload: vec![ids[s].clone()],
            },
            &mut ledger,
        );
        for &r in adj.neighbors(s) {
            heard[r].push(msg.payload[0].clone());
        }
    }
    for h in &mut heard {
        h.sort();
    }

    // round 2: neighbor lists
    let mut lists: Vec<Vec<(NodeId, Vec<NodeId>)>> = vec![Vec::new(); n];
    for &s in order {
        let msg = broadcast(
            RoundMessage {
                round: 2,
                sender: ids[s].clone(),
                payload: heard[s].clone(),
            },
            &mut ledger,
        );
        for &r in adj.neighbors(s) {
            lists[r].push((msg.sender.clone(), msg.payload.clone()));
        }
    }

    // offline choice from received data only
    let mut choices = Vec::with_capacity(n);
    for r in 0..n {
        let mine = &heard[r];
        let mut links = Vec::new();
        for (j, their) in &lists[r] {
            for k in their {
                if k > j && mine.binary_search(k).is_ok() {
                    links.push((j.clone(), k.clone()));
                }
            }
        }
        let view = LocalView::new(ids[r].clone(), mine.iter().cloned(), links)?;
        choices.push(alg1_choice(&view).targets);
    }

    // round 3: announce targets; a receiver named in the payload joins the link
    let mut edges = Vec::new();
    for &s in order {
        let msg = broadcast(
            RoundMessage {
                round: 3,
                sender: ids[s].clone(),
                payload: choices[s].clone(),
            },
            &mut ledger,
        );
        for &r in adj.neighbors(s) {
            if msg.payload.contains(&ids[r]) {
                edges.push((s, r));
            }
        }
    }

    Ok(ProtocolOutcome {
        topology: Topology::from_index_edges(adj, edges)?,
        ledger,
        transcript,
    })
}

fn is_permutation(order: &[usize], n: usize) -> bool {
    if order.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    order
        .iter()
        .all(|&k| k < n && !std::mem::replace(&mut seen[k], true))
}

/// True iff every schedule reproduces the reference topology. Any schedule
/// is run as a sequence of local executions (repeats allowed); schedules
/// that are permutations additionally drive the message protocol, whose bit
/// totals must match the reference run.
pub fn delivery_order_stress(adj: &Adjacency, schedules: &[Vec<usize>]) -> bool {
    let reference = simulate_protocol(adj);
    let rule = crate::algorithms::Alg1;
    schedules.iter().all(|schedule| {
        let local_ok = matches!(
            crate::algorithms::run_local_scheduled(adj, &rule, schedule),
            Ok(t) if t == reference.topology
        );
        let protocol_ok = if is_permutation(schedule, adj.node_count()) {
            matches!(
                simulate_protocol_scheduled(adj, schedule),
                Ok(out) if out.topology == reference.topology && out.ledger == reference.ledger
            )
        } else {
            true
        };
        local_ok && protocol_ok
    })
}

/// How the range scales with `n` in a complexity profile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DensityScaling {
    /// `pi R^2 = (log n + log log n) / n`, just above the connectivity
    /// threshold.
    Threshold,
    /// `pi R^2 = N / n` for a fixed expected degree `N`.
    Fixed(f64),
}

impl DensityScaling {
    pub fn density(&self, n: usize) -> f64 {
        match *self {
            DensityScaling::Threshold => {
                let l = (n as f64).ln();
                l + l.ln()
            }
            DensityScaling::Fixed(d) => d,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComplexityRow {
    pub n: usize,
    pub density: f64,
    pub id_width: u64,
    /// Mean bits per node for each round.
    pub mean_round_bits: [f64; 3],
    pub mean_bits: f64,
}

/// Mean per-node protocol bits on uniform random placements.
pub fn complexity_profile(
    n_values: &[usize],
    scaling: DensityScaling,
    trials: usize,
    seed: u64,
) -> Result<Vec<ComplexityRow>> {
    if trials == 0 {
        return Err(TopoError::InvalidParameter("trials must be at least 1".into()));
    }
    let mut rows = Vec::with_capacity(n_values.len());
    for &n in n_values {
        let density = scaling.density(n);
        let model = DiskModel::from_density(n, density)?;
        let mut sums = [0f64; 3];
        let mut width = 0;
        for t in 0..trials {
            let pts = generate_uniform_points(n, trial_seed(seed ^ n as u64, t as u64))?;
            let adj = build_gilbert(&pts, &model);
            let out = simulate_protocol(&adj);
            width = out.ledger.id_width;
            let totals = out.ledger.round_totals();
            for r in 0..3 {
                sums[r] += totals[r] as f64 / n as f64;
            }
        }
        let mean_round_bits = sums.map(|s| s / trials as f64);
        rows.push(ComplexityRow {
            n,
            density,
            id_width: width,
            mean_round_bits,
            mean_bits: mean_round_bits.iter().sum(),
        });
    }
    Ok(rows)
}

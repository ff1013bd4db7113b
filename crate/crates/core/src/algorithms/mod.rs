//! Topology-control algorithms behind one trait, looked up by descriptor.
//!
//! Descriptors: `alg1`, `alg2:<delta>`, `variant:<min|max>`, `xtc`,
//! `kneigh:<k>[:<union|intersection>]`, `gilbert`.

mod kneigh;
mod rules;
mod xtc;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

pub use kneigh::{kneigh, nominations, KNeighMode};
pub use rules::{alg1_choice, alg2_choice, variant_choice, BlockPicker, MaxId, MinId};
pub use xtc::xtc;

use crate::error::{Result, TopoError};
use crate::geometry::PointSet;
use crate::graph::{Adjacency, Topology, UndirectedGraph};
use crate::local::{ConnectionChoice, LocalView};

/// A rule evaluated independently at every node from its [`LocalView`].
pub trait LocalRule: Send + Sync {
    fn choose(&self, view: &LocalView) -> Result<ConnectionChoice>;
}

/// What an algorithm promises about its output. Used by verification to
/// tell a genuine failure from an expected one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Guarantees {
    /// Output has exactly the Gilbert graph's component partition.
    pub preserves_components: bool,
    /// Edge count is at most this many times `n`.
    pub edges_per_node: Option<usize>,
    /// Upper bound on every node degree.
    pub max_degree: Option<usize>,
    /// Every node `i` has degree at least `min(d_i, floor)`.
    pub degree_floor: Option<usize>,
    /// Realized by the three-round message protocol.
    pub protocol: bool,
}

/// A named topology-control strategy.
pub trait TopologyControl: Send + Sync {
    /// Canonical descriptor, parseable by [`Registry::create`].
    fn descriptor(&self) -> String;

    fn build(&self, points: &PointSet, adj: &Adjacency) -> Result<Topology>;

    fn guarantees(&self) -> Guarantees;

    /// Identifier-only strategies expose their per-node rule.
    fn local_rule(&self) -> Option<&dyn LocalRule> {
        None
    }

    /// Whether the strategy reads coordinates.
    fn position_aware(&self) -> bool {
        self.local_rule().is_none()
    }
}

impl fmt::Debug for dyn TopologyControl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TopologyControl({})", self.descriptor())
    }
}

/// Runs `rule` once at every node and joins the chosen links.
pub fn run_local(adj: &Adjacency, rule: &dyn LocalRule) -> Result<Topology> {
    let mut edges = Vec::new();
    for ix in 0..adj.node_count() {
        push_choice(adj, ix, rule, &mut edges)?;
    }
    Topology::from_index_edges(adj, edges)
}

/// Runs `rule` at nodes in `schedule` order. Nodes may appear any number of
/// times; a node that never appears initiates nothing.
pub fn run_local_scheduled(adj: &Adjacency, rule: &dyn LocalRule, schedule: &[usize]) -> Result<Topology> {
    let mut edges = BTreeSet::new();
    for &ix in schedule {
        if ix >= adj.node_count() {
            return Err(TopoError::InvalidParameter(format!(
                "schedule entry {ix} out of range"
            )));
        }
        let mut buf = Vec::new();
        push_choice(adj, ix, rule, &mut buf)?;
        edges.extend(buf.into_iter().map(|(a, b)| (a.min(b), a.max(b))));
    }
    Topology::from_index_edges(adj, edges)
}

fn push_choice(adj: &Adjacency, ix: usize, rule: &dyn LocalRule, out: &mut Vec<(usize, usize)>) -> Result<()> {
    let view = LocalView::from_adjacency(adj, ix);
    let choice = rule.choose(&view)?;
    for t in &choice.targets {
        let tx = adj.index_of(t).ok_or_else(|| TopoError::UnknownNode(t.clone()))?;
        out.push((ix, tx));
    }
    Ok(())
}

/// Topology produced by running the lesser-neighborhood rule at every node.
pub fn run_alg1(adj: &Adjacency) -> Topology {
    run_local(adj, &Alg1).expect("views built from a valid adjacency")
}

pub fn run_alg2(adj: &Adjacency, delta: usize) -> Result<Topology> {
    run_local(adj, &Alg2::new(delta)?)
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Alg1;

impl LocalRule for Alg1 {
    fn choose(&self, view: &LocalView) -> Result<ConnectionChoice> {
        Ok(alg1_choice(view))
    }
}

impl TopologyControl for Alg1 {
    fn descriptor(&self) -> String {
        "alg1".into()
    }

    fn build(&self, _points: &PointSet, adj: &Adjacency) -> Result<Topology> {
        run_local(adj, self)
    }

    fn guarantees(&self) -> Guarantees {
        Guarantees {
            preserves_components: true,
            edges_per_node: Some(5),
            max_degree: Some(10),
            degree_floor: None,
            protocol: true,
        }
    }

    fn local_rule(&self) -> Option<&dyn LocalRule> {
        Some(self)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Alg2 {
    delta: usize,
}

impl Alg2 {
    pub fn new(delta: usize) -> Result<Self> {
        if delta < 1 {
            return Err(TopoError::InvalidParameter(
                "minimum degree delta must be at least 1".into(),
            ));
        }
        Ok(Alg2 { delta })
    }

    pub fn delta(&self) -> usize {
        self.delta
    }
}

impl LocalRule for Alg2 {
    fn choose(&self, view: &LocalView) -> Result<ConnectionChoice> {
        alg2_choice(view, self.delta)
    }
}

impl TopologyControl for Alg2 {
    fn descriptor(&self) -> String {
        format!("alg2:{}", self.delta)
    }

    fn build(&self, _points: &PointSet, adj: &Adjacency) -> Result<Topology> {
        run_local(adj, self)
    }

    fn guarantees(&self) -> Guarantees {
        let cap = self.delta.max(5);
        Guarantees {
            preserves_components: true,
            edges_per_node: Some(cap),
            max_degree: Some(cap + 10 * self.delta),
            degree_floor: Some(self.delta),
            protocol: false,
        }
    }

    fn local_rule(&self) -> Option<&dyn LocalRule> {
        Some(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pick {
    Min,
    Max,
}

/// One arbitrary member per lesser-neighborhood component.
#[derive(Debug, Clone, Copy)]
pub struct Variant {
    pick: Pick,
}

impl Variant {
    pub fn new(pick: Pick) -> Self {
        Variant { pick }
    }
}

impl LocalRule for Variant {
    fn choose(&self, view: &LocalView) -> Result<ConnectionChoice> {
        Ok(match self.pick {
            Pick::Min => variant_choice(view, &MinId),
            Pick::Max => variant_choice(view, &MaxId),
        })
    }
}

impl TopologyControl for Variant {
    fn descriptor(&self) -> String {
        match self.pick {
            Pick::Min => "variant:min".into(),
            Pick::Max => "variant:max".into(),
        }
    }

    fn build(&self, _points: &PointSet, adj: &Adjacency) -> Result<Topology> {
        run_local(adj, self)
    }

    fn guarantees(&self) -> Guarantees {
        Guarantees {
            preserves_components: true,
            edges_per_node: Some(5),
            max_degree: match self.pick {
                Pick::Max => Some(10),
                Pick::Min => None,
            },
            degree_floor: None,
            protocol: false,
        }
    }

    fn local_rule(&self) -> Option<&dyn LocalRule> {
        Some(self)
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Xtc;

impl TopologyControl for Xtc {
    fn descriptor(&self) -> String {
        "xtc".into()
    }

    fn build(&self, points: &PointSet, adj: &Adjacency) -> Result<Topology> {
        crate::paths::check_same_nodes(points, adj)?;
        Ok(xtc(points, adj))
    }

    fn guarantees(&self) -> Guarantees {
        Guarantees {
            preserves_components: true,
            ..Guarantees::default()
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct KNeigh {
    k: usize,
    mode: KNeighMode,
}

impl KNeigh {
    pub fn new(k: usize, mode: KNeighMode) -> Result<Self> {
        if k < 1 {
            return Err(TopoError::InvalidParameter("k-neigh requires k >= 1".into()));
        }
        Ok(KNeigh { k, mode })
    }
}

impl TopologyControl for KNeigh {
    fn descriptor(&self) -> String {
        format!("kneigh:{}:{}", self.k, self.mode.as_str())
    }

    fn build(&self, points: &PointSet, adj: &Adjacency) -> Result<Topology> {
        crate::paths::check_same_nodes(points, adj)?;
        kneigh(points, adj, self.k, self.mode)
    }

    fn guarantees(&self) -> Guarantees {
        Guarantees::default()
    }
}

/// The Gilbert graph itself.
#[derive(Debug, Clone, Copy, Default)]
pub struct Gilbert;

impl TopologyControl for Gilbert {
    fn descriptor(&self) -> String {
        "gilbert".into()
    }

    fn build(&self, _points: &PointSet, adj: &Adjacency) -> Result<Topology> {
        Ok(Topology::full(adj))
    }

    fn guarantees(&self) -> Guarantees {
        Guarantees {
            preserves_components: true,
            ..Guarantees::default()
        }
    }

    fn position_aware(&self) -> bool {
        false
    }
}

type Factory = fn(&[&str]) -> Result<Box<dyn TopologyControl>>;

struct Entry {
    usage: &'static str,
    factory: Factory,
}

/// Name-keyed table of algorithm constructors.
pub struct Registry {
    entries: BTreeMap<&'static str, Entry>,
}

impl Registry {
    pub fn empty() -> Self {
        Registry {
            entries: BTreeMap::new(),
        }
    }

    pub fn builtin() -> Self {
        let mut r = Self::empty();
        r.register("alg1", "alg1", |args| {
            no_args("alg1", args)?;
            Ok(Box::new(Alg1))
        });
        r.register("alg2", "alg2:<delta>", |args| match args {
            [d] => Ok(Box::new(Alg2::new(parse_count("delta", d)?)?)),
            _ => Err(bad_args("alg2", "alg2:<delta>")),
        });
        r.register("variant", "variant:<min|max>", |args| match args {
            ["min"] => Ok(Box::new(Variant::new(Pick::Min))),
            ["max"] => Ok(Box::new(Variant::new(Pick::Max))),
            _ => Err(bad_args("variant", "variant:<min|max>")),
        });
        r.register("xtc", "xtc", |args| {
            no_args("xtc", args)?;
            Ok(Box::new(Xtc))
        });
        r.register("kneigh", "kneigh:<k>[:<union|intersection>]", |args| match args {
            [k] => Ok(Box::new(KNeigh::new(parse_count("k", k)?, KNeighMode::Union)?)),
            [k, mode] => Ok(Box::new(KNeigh::new(parse_count("k", k)?, mode.parse()?)?)),
            _ => Err(bad_args("kneigh", "kneigh:<k>[:<union|intersection>]")),
        });
        r.register("gilbert", "gilbert", |args| {
            no_args("gilbert", args)?;
            Ok(Box::new(Gilbert))
        });
        r
    }

    pub fn register(&mut self, name: &'static str, usage: &'static str, factory: Factory) {
        self.entries.insert(name, Entry { usage, factory });
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.entries.keys().copied()
    }

    pub fn usages(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.entries.values().map(|e| e.usage)
    }

    pub fn create(&self, descriptor: &str) -> Result<Box<dyn TopologyControl>> {
        let mut parts = descriptor.trim().split(':');
        let name = parts.next().unwrap_or_default();
        let args: Vec<&str> = parts.collect();
        let entry = self
            .entries
            .get(name)
            .ok_or_else(|| TopoError::UnknownAlgorithm(descriptor.to_string()))?;
        (entry.factory)(&args)
    }
}

impl Default for Registry {
    fn default() -> Self {
        Self::builtin()
    }
}

/// Shorthand for `Registry::builtin().create(descriptor)`.
pub fn parse_algorithm(descriptor: &str) -> Result<Box<dyn TopologyControl>> {
    Registry::builtin().create(descriptor)
}

fn no_args(name: &str, args: &[&str]) -> Result<()> {
    if args.is_empty() {
        Ok(())
    } else {
        Err(bad_args(name, name))
    }
}

fn bad_args(name: &str, usage: &str) -> TopoError {
    TopoError::InvalidParameter(format!("bad arguments for `{name}`, expected `{usage}`"))
}

fn parse_count(what: &str, s: &str) -> Result<usize> {
    s.parse::<usize>()
        .map_err(|_| TopoError::InvalidParameter(format!("{what} must be a non-negative integer, got `{s}`")))
}

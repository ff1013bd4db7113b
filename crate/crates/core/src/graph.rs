//! Undirected simple graphs over a fixed, sorted node set.
//!
//! [`Adjacency`] holds a Gilbert graph (or any symmetric neighbor relation),
//! [`Topology`] a spanning subgraph of one. Nodes are addressed internally
//! by their position in the sorted id list, so comparing two positions is the
//! same as comparing the ids.

use std::collections::{BTreeMap, VecDeque};
use std::sync::Arc;

use crate::error::{Result, TopoError};
use crate::id::NodeId;

/// Read-only access shared by [`Adjacency`] and [`Topology`].
pub trait UndirectedGraph {
    fn ids(&self) -> &[NodeId];
    fn neighbors(&self, ix: usize) -> &[usize];

    fn node_count(&self) -> usize {
        self.ids().len()
    }

    fn index_of(&self, id: &NodeId) -> Option<usize> {
        self.ids().binary_search(id).ok()
    }

    fn degree(&self, ix: usize) -> usize {
        self.neighbors(ix).len()
    }

    fn has_edge(&self, a: usize, b: usize) -> bool {
        self.neighbors(a).binary_search(&b).is_ok()
    }
}

/// Symmetric, irreflexive neighbor lists, each sorted ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct Adjacency {
    ids: Arc<[NodeId]>,
    nbrs: Vec<Vec<usize>>,
}

impl Adjacency {
    pub(crate) fn from_sorted_lists(ids: Arc<[NodeId]>, nbrs: Vec<Vec<usize>>) -> Self {
        debug_assert_eq!(ids.len(), nbrs.len());
        let adj = Adjacency { ids, nbrs };
        debug_assert!(adj.is_well_formed());
        adj
    }

    /// Builds an adjacency from an explicit node set and edge list. Edges
    /// may be listed in either orientation and more than once.
    pub fn from_edges(
        ids: impl IntoIterator<Item = NodeId>,
        edges: impl IntoIterator<Item = (NodeId, NodeId)>,
    ) -> Result<Self> {
        let mut ids: Vec<NodeId> = ids.into_iter().collect();
        ids.sort();
        for w in ids.windows(2) {
            if w[0] == w[1] {
                return Err(TopoError::DuplicateId(w[0].clone()));
            }
        }
        let mut nbrs = vec![Vec::new(); ids.len()];
        for (a, b) in edges {
            let ia = ids.binary_search(&a).map_err(|_| TopoError::UnknownNode(a.clone()))?;
            let ib = ids.binary_search(&b).map_err(|_| TopoError::UnknownNode(b.clone()))?;
            if ia == ib {
                return Err(TopoError::InvalidParameter(format!("self-loop at node {a}")));
            }
            nbrs[ia].push(ib);
            nbrs[ib].push(ia);
        }
        for l in &mut nbrs {
            l.sort_unstable();
            l.dedup();
        }
        Ok(Adjacency {
            ids: ids.into(),
            nbrs,
        })
    }

    /// Complete graph on the given ids.
    pub fn complete(ids: impl IntoIterator<Item = NodeId>) -> Result<Self> {
        let ids: Vec<NodeId> = ids.into_iter().collect();
        let mut edges = Vec::new();
        for a in 0..ids.len() {
            for b in (a + 1)..ids.len() {
                edges.push((ids[a].clone(), ids[b].clone()));
            }
        }
        Self::from_edges(ids, edges)
    }

    pub(crate) fn shared_ids(&self) -> Arc<[NodeId]> {
        Arc::clone(&self.ids)
    }

    pub fn id(&self, ix: usize) -> &NodeId {
        &self.ids[ix]
    }

    pub fn edge_count(&self) -> usize {
        self.nbrs.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges as index pairs `(a, b)` with `a < b`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.nbrs
            .iter()
            .enumerate()
            .flat_map(|(a, l)| l.iter().filter(move |&&b| b > a).map(move |&b| (a, b)))
    }

    pub fn neighbor_ids(&self, id: &NodeId) -> Result<Vec<NodeId>> {
        let ix = self.require(id)?;
        Ok(self.nbrs[ix].iter().map(|&k| self.ids[k].clone()).collect())
    }

    pub(crate) fn require(&self, id: &NodeId) -> Result<usize> {
        self.index_of(id).ok_or_else(|| TopoError::UnknownNode(id.clone()))
    }

    /// Symmetric, irreflexive and sorted without duplicates.
    pub fn is_well_formed(&self) -> bool {
        self.nbrs.iter().enumerate().all(|(a, l)| {
            l.windows(2).all(|w| w[0] < w[1])
                && l.iter()
                    .all(|&b| b != a && b < self.nbrs.len() && self.nbrs[b].binary_search(&a).is_ok())
        })
    }
}

impl UndirectedGraph for Adjacency {
    fn ids(&self) -> &[NodeId] {
        &self.ids
    }

    fn neighbors(&self, ix: usize) -> &[usize] {
        &self.nbrs[ix]
    }
}

/// A spanning subgraph of some source [`Adjacency`]: same node set, every
/// edge present in the source.
#[derive(Debug, Clone, PartialEq)]
pub struct Topology {
    graph: Adjacency,
}

impl Topology {
    pub fn empty(source: &Adjacency) -> Self {
        Topology {
            graph: Adjacency {
                ids: source.shared_ids(),
                nbrs: vec![Vec::new(); source.node_count()],
            },
        }
    }

    /// The source graph itself.
    pub fn full(source: &Adjacency) -> Self {
        Topology {
            graph: source.clone(),
        }
    }

    /// Builds the topology from index pairs into `source`. Orientation and
    /// repeats do not matter; any pair missing from `source` is rejected.
    pub fn from_index_edges(
        source: &Adjacency,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let n = source.node_count();
        let mut nbrs = vec![Vec::new(); n];
        for (a, b) in edges {
            if a >= n || b >= n || !source.has_edge(a, b) {
                let name = |k: usize| source.ids.get(k).cloned().unwrap_or(NodeId::Num(k as u64));
                return Err(TopoError::NotASubgraph(name(a), name(b)));
            }
            nbrs[a].push(b);
            nbrs[b].push(a);
        }
        for l in &mut nbrs {
            l.sort_unstable();
            l.dedup();
        }
        Ok(Topology {
            graph: Adjacency {
                ids: source.shared_ids(),
                nbrs,
            },
        })
    }

    pub fn from_id_edges(
        source: &Adjacency,
        edges: impl IntoIterator<Item = (NodeId, NodeId)>,
    ) -> Result<Self> {
        let mut pairs = Vec::new();
        for (a, b) in edges {
            pairs.push((source.require(&a)?, source.require(&b)?));
        }
        Self::from_index_edges(source, pairs)
    }

    pub fn as_adjacency(&self) -> &Adjacency {
        &self.graph
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.graph.edges()
    }

    /// Edges as id pairs `(a, b)` with `a < b`, sorted.
    pub fn id_edges(&self) -> Vec<(NodeId, NodeId)> {
        self.edges()
            .map(|(a, b)| (self.graph.ids[a].clone(), self.graph.ids[b].clone()))
            .collect()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.graph.nbrs.iter().map(Vec::len).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.graph.nbrs.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_subgraph_of(&self, source: &Adjacency) -> bool {
        self.graph.ids == source.ids && self.edges().all(|(a, b)| source.has_edge(a, b))
    }
}

impl UndirectedGraph for Topology {
    fn ids(&self) -> &[NodeId] {
        &self.graph.ids
    }

    fn neighbors(&self, ix: usize) -> &[usize] {
        &self.graph.nbrs[ix]
    }
}

/// Disjoint node blocks, each sorted ascending, blocks ordered by their
/// smallest member.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Partition {
    pub blocks: Vec<Vec<NodeId>>,
}

impl Partition {
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }
}

/// `{ j in nbrs(i) : j < i }`.
pub fn lesser_neighborhood(adj: &Adjacency, id: &NodeId) -> Result<Vec<NodeId>> {
    let ix = adj.require(id)?;
    Ok(adj
        .neighbors(ix)
        .iter()
        .take_while(|&&k| k < ix)
        .map(|&k| adj.id(k).clone())
        .collect())
}

/// `{ j in nbrs(i) : j > i }`.
pub fn greater_neighborhood(adj: &Adjacency, id: &NodeId) -> Result<Vec<NodeId>> {
    let ix = adj.require(id)?;
    Ok(adj
        .neighbors(ix)
        .iter()
        .skip_while(|&&k| k < ix)
        .map(|&k| adj.id(k).clone())
        .collect())
}

/// Connected components of the subgraph of `adj` induced by `subset`.
pub fn induced_components(adj: &Adjacency, subset: &[NodeId]) -> Result<Partition> {
    let mut members = subset
        .iter()
        .map(|id| adj.require(id))
        .collect::<Result<Vec<_>>>()?;
    members.sort_unstable();
    members.dedup();

    let mut seen = vec![false; members.len()];
    let mut blocks = Vec::new();
    let mut queue = VecDeque::new();
    for start in 0..members.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        queue.push_back(start);
        let mut block = Vec::new();
        while let Some(u) = queue.pop_front() {
            block.push(members[u]);
            for &w in adj.neighbors(members[u]) {
                if let Ok(local) = members.binary_search(&w) {
                    if !seen[local] {
                        seen[local] = true;
                        queue.push_back(local);
                    }
                }
            }
        }
        block.sort_unstable();
        blocks.push(block.into_iter().map(|k| adj.id(k).clone()).collect());
    }
    Ok(Partition { blocks })
}

/// Component label per node. Labels are assigned in order of each
/// component's smallest node, so two graphs over the same node set have the
/// same partition iff their label vectors are equal.
pub fn component_labels<G: UndirectedGraph + ?Sized>(g: &G) -> Vec<usize> {
    const UNSET: usize = usize::MAX;
    let n = g.node_count();
    let mut label = vec![UNSET; n];
    let mut queue = VecDeque::new();
    let mut next = 0;
    for s in 0..n {
        if label[s] != UNSET {
            continue;
        }
        label[s] = next;
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if label[w] == UNSET {
                    label[w] = next;
                    queue.push_back(w);
                }
            }
        }
        next += 1;
    }
    label
}

pub fn connected_components<G: UndirectedGraph + ?Sized>(g: &G) -> Partition {
    let labels = component_labels(g);
    let count = labels.iter().copied().max().map_or(0, |m| m + 1);
    let mut blocks = vec![Vec::new(); count];
    for (ix, &l) in labels.iter().enumerate() {
        blocks[l].push(g.ids()[ix].clone());
    }
    Partition { blocks }
}

/// True when every pair of nodes is joined by a path. Graphs with zero or
/// one node count as connected.
pub fn is_connected<G: UndirectedGraph + ?Sized>(g: &G) -> bool {
    component_labels(g).iter().all(|&l| l == 0)
}

pub fn component_count<G: UndirectedGraph + ?Sized>(g: &G) -> usize {
    component_labels(g).iter().copied().max().map_or(0, |m| m + 1)
}

pub fn degree_sequence<G: UndirectedGraph + ?Sized>(g: &G) -> BTreeMap<NodeId, usize> {
    (0..g.node_count())
        .map(|ix| (g.ids()[ix].clone(), g.degree(ix)))
        .collect()
}

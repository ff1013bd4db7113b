//! What a node knows when it decides its connections: the ids of its one-hop
//! neighbors and which of those neighbors hear each other. No coordinates,
//! distances or bearings are available here.

use std::collections::VecDeque;

use crate::error::{Result, TopoError};
use crate::graph::{Adjacency, UndirectedGraph};
use crate::id::NodeId;

#[derive(Debug, Clone, PartialEq)]
pub struct LocalView {
    me: NodeId,
    one_hop: Vec<NodeId>,
    // adjacency among `one_hop`, by position in `one_hop`
    links: Vec<Vec<usize>>,
}

impl LocalView {
    /// Assembles a view from raw neighborhood knowledge, rejecting anything a
    /// real node could not have learned (self as neighbor, repeated ids,
    /// links that leave the one-hop set).
    pub fn new(
        me: NodeId,
        one_hop: impl IntoIterator<Item = NodeId>,
        two_hop_edges: impl IntoIterator<Item = (NodeId, NodeId)>,
    ) -> Result<Self> {
        let bad = |reason: String| TopoError::InconsistentView {
            node: me.clone(),
            reason,
        };
        let mut one_hop: Vec<NodeId> = one_hop.into_iter().collect();
        one_hop.sort();
        if one_hop.windows(2).any(|w| w[0] == w[1]) {
            return Err(bad("repeated neighbor id".into()));
        }
        if one_hop.binary_search(&me).is_ok() {
            return Err(bad("node lists itself as a neighbor".into()));
        }
        let mut links = vec![Vec::new(); one_hop.len()];
        for (a, b) in two_hop_edges {
            let la = one_hop
                .binary_search(&a)
                .map_err(|_| bad(format!("link endpoint {a} is not a neighbor")))?;
            let lb = one_hop
                .binary_search(&b)
                .map_err(|_| bad(format!("link endpoint {b} is not a neighbor")))?;
            if la == lb {
                return Err(bad(format!("self-link at {a}")));
            }
            links[la].push(lb);
            links[lb].push(la);
        }
        for l in &mut links {
            l.sort_unstable();
            l.dedup();
        }
        Ok(LocalView { me, one_hop, links })
    }

    /// The view node `ix` gathers from the first two protocol rounds.
    pub fn from_adjacency(adj: &Adjacency, ix: usize) -> Self {
        let mine = adj.neighbors(ix);
        let links = mine
            .iter()
            .map(|&j| sorted_intersection_positions(mine, adj.neighbors(j)))
            .collect();
        LocalView {
            me: adj.id(ix).clone(),
            one_hop: mine.iter().map(|&k| adj.id(k).clone()).collect(),
            links,
        }
    }

    pub fn me(&self) -> &NodeId {
        &self.me
    }

    pub fn one_hop(&self) -> &[NodeId] {
        &self.one_hop
    }

    pub fn two_hop_edges(&self) -> Vec<(NodeId, NodeId)> {
        let mut out = Vec::new();
        for (a, l) in self.links.iter().enumerate() {
            for &b in l.iter().filter(|&&b| b > a) {
                out.push((self.one_hop[a].clone(), self.one_hop[b].clone()));
            }
        }
        out
    }

    fn lesser_len(&self) -> usize {
        self.one_hop.partition_point(|j| j < &self.me)
    }

    /// Neighbors with a smaller id, ascending.
    pub fn lesser(&self) -> &[NodeId] {
        &self.one_hop[..self.lesser_len()]
    }

    /// Neighbors with a larger id, ascending.
    pub fn greater(&self) -> &[NodeId] {
        &self.one_hop[self.lesser_len()..]
    }

    /// Connected components of the graph the lesser neighbors induce among
    /// themselves. Each block is sorted; blocks are ordered by their minimum.
    pub fn lesser_blocks(&self) -> Vec<Vec<NodeId>> {
        let m = self.lesser_len();
        let mut seen = vec![false; m];
        let mut blocks = Vec::new();
        let mut queue = VecDeque::new();
        for s in 0..m {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            queue.push_back(s);
            let mut block = Vec::new();
            while let Some(u) = queue.pop_front() {
                block.push(u);
                for &w in self.links[u].iter().take_while(|&&w| w < m) {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            block.sort_unstable();
            blocks.push(block.into_iter().map(|k| self.one_hop[k].clone()).collect());
        }
        blocks
    }
}

// Positions in `a` of the elements shared with `b`; both sorted.
fn sorted_intersection_positions(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(i);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// The set of neighbors a node initiates connections to.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct ConnectionChoice {
    pub initiator: NodeId,
    /// Sorted ascending.
    pub targets: Vec<NodeId>,
}

impl ConnectionChoice {
    pub(crate) fn new(initiator: NodeId, mut targets: Vec<NodeId>) -> Self {
        targets.sort();
        targets.dedup();
        ConnectionChoice { initiator, targets }
    }
}

//! Minimum path costs with edge weights `|x_a - x_b|^alpha`.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, VecDeque};

use crate::error::{Result, TopoError};
use crate::geometry::{Point, PointSet};
use crate::graph::UndirectedGraph;
use crate::id::NodeId;

/// Weight of a single hop. `alpha == 0` is the hop count.
pub fn edge_weight(a: &Point, b: &Point, alpha: f64) -> f64 {
    if alpha == 0.0 {
        1.0
    } else if alpha == 1.0 {
        a.dist(b)
    } else if alpha == 2.0 {
        a.dist2(b)
    } else {
        a.dist(b).powf(alpha)
    }
}

pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    if alpha.is_finite() && alpha >= 0.0 {
        Ok(())
    } else {
        Err(TopoError::InvalidParameter(format!(
            "path-cost exponent must be finite and >= 0, got {alpha}"
        )))
    }
}

pub(crate) fn check_same_nodes<G: UndirectedGraph + ?Sized>(points: &PointSet, g: &G) -> Result<()> {
    if points.ids() == g.ids() {
        Ok(())
    } else {
        Err(TopoError::NodeSetMismatch)
    }
}

/// Minimum cost between two distinct nodes; `+inf` when they are not
/// path-connected.
pub fn path_cost<G: UndirectedGraph + ?Sized>(
    points: &PointSet,
    g: &G,
    i: &NodeId,
    j: &NodeId,
    alpha: f64,
) -> Result<f64> {
    check_alpha(alpha)?;
    check_same_nodes(points, g)?;
    if i == j {
        return Err(TopoError::SameEndpoints(i.clone()));
    }
    let src = g.index_of(i).ok_or_else(|| TopoError::UnknownNode(i.clone()))?;
    let dst = g.index_of(j).ok_or_else(|| TopoError::UnknownNode(j.clone()))?;
    Ok(single_source_costs(points.coords(), g, src, alpha)[dst])
}

/// Costs from `src` to every node (`0` at `src`, `+inf` when unreachable).
/// Breadth-first search for `alpha == 0`, Dijkstra otherwise.
pub fn single_source_costs<G: UndirectedGraph + ?Sized>(
    coords: &[Point],
    g: &G,
    src: usize,
    alpha: f64,
) -> Vec<f64> {
    let n = g.node_count();
    let mut cost = vec![f64::INFINITY; n];
    cost[src] = 0.0;
    if alpha == 0.0 {
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            let next = cost[u] + 1.0;
            for &w in g.neighbors(u) {
                if cost[w].is_infinite() {
                    cost[w] = next;
                    queue.push_back(w);
                }
            }
        }
        return cost;
    }

    let mut heap = BinaryHeap::new();
    heap.push(Frontier { cost: 0.0, node: src });
    while let Some(Frontier { cost: c, node: u }) = heap.pop() {
        if c > cost[u] {
            continue;
        }
        for &w in g.neighbors(u) {
            let cand = c + edge_weight(&coords[u], &coords[w], alpha);
            if cand < cost[w] {
                cost[w] = cand;
                heap.push(Frontier { cost: cand, node: w });
            }
        }
    }
    cost
}

#[derive(Debug, PartialEq)]
struct Frontier {
    cost: f64,
    node: usize,
}

impl Eq for Frontier {}

impl Ord for Frontier {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .cost
            .total_cmp(&self.cost)
            .then_with(|| other.node.cmp(&self.node))
    }
}

impl PartialOrd for Frontier {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

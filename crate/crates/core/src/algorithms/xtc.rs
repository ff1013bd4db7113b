//! XTC baseline. Each node ranks its neighbors by distance (closer first,
//! smaller id first on equal distance). The link `u - v` is dropped when
//! some common neighbor `w` ranks ahead of `v` at `u` and ahead of `u` at `v`.

use crate::geometry::{Point, PointSet};
use crate::graph::{Adjacency, Topology, UndirectedGraph};

// (squared distance, id position); positions order the same way as ids
fn rank_key(coords: &[Point], from: usize, to: usize) -> (f64, usize) {
    (coords[from].dist2(&coords[to]), to)
}

fn ranks_ahead(a: (f64, usize), b: (f64, usize)) -> bool {
    a.0 < b.0 || (a.0 == b.0 && a.1 < b.1)
}

pub fn xtc(points: &PointSet, adj: &Adjacency) -> Topology {
    let coords = points.coords();
    let mut kept = Vec::new();
    for (u, v) in adj.edges() {
        let v_at_u = rank_key(coords, u, v);
        let u_at_v = rank_key(coords, v, u);
        let (nu, nv) = (adj.neighbors(u), adj.neighbors(v));
        let (mut i, mut j) = (0, 0);
        let mut witnessed = false;
        while i < nu.len() && j < nv.len() && !witnessed {
            match nu[i].cmp(&nv[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    let w = nu[i];
                    witnessed = ranks_ahead(rank_key(coords, u, w), v_at_u)
                        && ranks_ahead(rank_key(coords, v, w), u_at_v);
                    i += 1;
                    j += 1;
                }
            }
        }
        if !witnessed {
            kept.push((u, v));
        }
    }
    Topology::from_index_edges(adj, kept).expect("XTC keeps a subset of the source edges")
}

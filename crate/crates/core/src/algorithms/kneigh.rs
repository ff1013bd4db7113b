//! k-Neigh baseline: every node nominates its `k` nearest in-range neighbors.

use crate::error::{Result, TopoError};
use crate::geometry::PointSet;
use crate::graph::{Adjacency, Topology, UndirectedGraph};

/// How nominations become edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KNeighMode {
    /// Keep an edge when either endpoint nominates the other.
    Union,
    /// Keep an edge only when both endpoints nominate each other.
    Intersection,
}

impl KNeighMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            KNeighMode::Union => "union",
            KNeighMode::Intersection => "intersection",
        }
    }
}

impl std::str::FromStr for KNeighMode {
    type Err = TopoError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "union" => Ok(KNeighMode::Union),
            "intersection" => Ok(KNeighMode::Intersection),
            other => Err(TopoError::InvalidParameter(format!(
                "k-neigh mode must be union or intersection, got `{other}`"
            ))),
        }
    }
}

/// The `k` nearest neighbors of every node (all of them when the degree is
/// at most `k`); distance ties go to the smaller id. Each list is sorted by
/// position.
pub fn nominations(points: &PointSet, adj: &Adjacency, k: usize) -> Vec<Vec<usize>> {
    let coords = points.coords();
    (0..adj.node_count())
        .map(|u| {
            let mut cands: Vec<(f64, usize)> = adj
                .neighbors(u)
                .iter()
                .map(|&v| (coords[u].dist2(&coords[v]), v))
                .collect();
            if cands.len() > k {
                cands.select_nth_unstable_by(k - 1, |a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
                cands.truncate(k);
            }
            let mut picked: Vec<usize> = cands.into_iter().map(|(_, v)| v).collect();
            picked.sort_unstable();
            picked
        })
        .collect()
}

pub fn kneigh(points: &PointSet, adj: &Adjacency, k: usize, mode: KNeighMode) -> Result<Topology> {
    if k < 1 {
        return Err(TopoError::InvalidParameter("k-neigh requires k >= 1".into()));
    }
    let nom = nominations(points, adj, k);
    let mut edges = Vec::new();
    for (u, list) in nom.iter().enumerate() {
        for &v in list {
            let mutual = nom[v].binary_search(&u).is_ok();
            match mode {
                KNeighMode::Union => edges.push((u, v)),
                KNeighMode::Intersection if mutual && u < v => edges.push((u, v)),
                KNeighMode::Intersection => {}
            }
        }
    }
    Topology::from_index_edges(adj, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{build_gilbert, DiskModel};

    fn setup() -> (PointSet, Adjacency) {
        // node 1 at the origin; 2, 3, 4 at increasing distance on the x axis
        let pts = PointSet::from_coords(vec![(0.0, 0.0), (0.1, 0.0), (0.3, 0.0), (0.6, 0.0)]).unwrap();
        let adj = build_gilbert(&pts, &DiskModel::new(1.0).unwrap());
        (pts, adj)
    }

    #[test]
    fn low_degree_nodes_nominate_everyone() {
        let (pts, adj) = setup();
        let nom = nominations(&pts, &adj, 5);
        assert_eq!(nom[0], vec![1, 2, 3]);
    }

    #[test]
    fn nearest_first() {
        let (pts, adj) = setup();
        let nom = nominations(&pts, &adj, 1);
        assert_eq!(nom, vec![vec![1], vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn union_vs_intersection() {
        let (pts, adj) = setup();
        let u = kneigh(&pts, &adj, 1, KNeighMode::Union).unwrap();
        let i = kneigh(&pts, &adj, 1, KNeighMode::Intersection).unwrap();
        assert_eq!(u.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2), (2, 3)]);
        assert_eq!(i.edges().collect::<Vec<_>>(), vec![(0, 1)]);
    }

    #[test]
    fn ties_go_to_smaller_id() {
        let pts = PointSet::from_coords(vec![(0.0, 0.0), (0.5, 0.0), (-0.5, 0.0)]).unwrap();
        let adj = build_gilbert(&pts, &DiskModel::new(1.0).unwrap());
        assert_eq!(nominations(&pts, &adj, 1)[0], vec![1]);
    }

    #[test]
    fn zero_k_rejected() {
        let (pts, adj) = setup();
        assert!(kneigh(&pts, &adj, 0, KNeighMode::Union).is_err());
    }
}

//! Node placement and the closed-disk communication model.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Result, TopoError};
use crate::graph::Adjacency;
use crate::id::NodeId;

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn dist2(&self, other: &Point) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        dx * dx + dy * dy
    }

    pub fn dist(&self, other: &Point) -> f64 {
        self.dist2(other).sqrt()
    }
}

/// Node coordinates keyed by id.
///
/// Entries are kept sorted by id, so position `k` in a point set and
/// position `k` in any graph built from it refer to the same node.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    ids: Arc<[NodeId]>,
    coords: Vec<Point>,
}

impl PointSet {
    pub fn new(entries: impl IntoIterator<Item = (NodeId, Point)>) -> Result<Self> {
        let mut entries: Vec<(NodeId, Point)> = entries.into_iter().collect();
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        for w in entries.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(TopoError::DuplicateId(w[0].0.clone()));
            }
        }
        if let Some((id, _)) = entries
            .iter()
            .find(|(_, p)| !(p.x.is_finite() && p.y.is_finite()))
        {
            return Err(TopoError::NonFiniteCoordinate(id.clone()));
        }
        let (ids, coords): (Vec<_>, Vec<_>) = entries.into_iter().unzip();
        Ok(PointSet {
            ids: ids.into(),
            coords,
        })
    }

    /// Numbers the points `1..=n` in the order given.
    pub fn from_coords(coords: impl IntoIterator<Item = (f64, f64)>) -> Result<Self> {
        Self::new(
            coords
                .into_iter()
                .enumerate()
                .map(|(k, (x, y))| (NodeId::Num(k as u64 + 1), Point::new(x, y))),
        )
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn ids(&self) -> &[NodeId] {
        &self.ids
    }

    pub(crate) fn shared_ids(&self) -> Arc<[NodeId]> {
        Arc::clone(&self.ids)
    }

    pub fn coords(&self) -> &[Point] {
        &self.coords
    }

    pub fn index_of(&self, id: &NodeId) -> Option<usize> {
        self.ids.binary_search(id).ok()
    }

    pub fn position(&self, id: &NodeId) -> Option<Point> {
        self.index_of(id).map(|k| self.coords[k])
    }

    pub fn iter(&self) -> impl Iterator<Item = (&NodeId, &Point)> {
        self.ids.iter().zip(self.coords.iter())
    }
}

/// Communication range `R` of the disk model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskModel {
    range: f64,
}

impl DiskModel {
    pub fn new(range: f64) -> Result<Self> {
        if range.is_finite() && range > 0.0 {
            Ok(DiskModel { range })
        } else {
            Err(TopoError::InvalidRange(range))
        }
    }

    /// Range for node density `N` on `n` nodes in the unit square:
    /// `R = sqrt(N / (pi n))`, so that `pi R^2 = N / n`.
    pub fn from_density(n: usize, density: f64) -> Result<Self> {
        if n == 0 || !(density.is_finite() && density > 0.0) {
            return Err(TopoError::InvalidParameter(format!(
                "density {density} with n = {n}"
            )));
        }
        Self::new(density_to_range(n, density))
    }

    pub fn range(&self) -> f64 {
        self.range
    }

    /// Closed-disk neighbor test, exact on squared distances.
    pub fn in_range(&self, a: &Point, b: &Point) -> bool {
        a.dist2(b) <= self.range * self.range
    }
}

pub fn density_to_range(n: usize, density: f64) -> f64 {
    (density / (std::f64::consts::PI * n as f64)).sqrt()
}

const BRUTE_FORCE_MAX: usize = 64;

/// Builds the Gilbert (unit-disk) graph: `i` and `j` are neighbors iff
/// `|x_i - x_j| <= R`.
///
/// Small inputs use the pairwise scan; larger ones bucket points into a grid
/// of cells slightly wider than `R` and only compare neighboring cells. Both
/// paths apply the same squared-distance test and agree exactly.
pub fn build_gilbert(points: &PointSet, model: &DiskModel) -> Adjacency {
    let n = points.len();
    let coords = points.coords();
    let mut nbrs: Vec<Vec<usize>> = vec![Vec::new(); n];
    if n <= BRUTE_FORCE_MAX {
        for i in 0..n {
            for j in (i + 1)..n {
                if model.in_range(&coords[i], &coords[j]) {
                    nbrs[i].push(j);
                    nbrs[j].push(i);
                }
            }
        }
    } else {
        let cell = model.range() * (1.0 + 1e-9);
        let key = |p: &Point| ((p.x / cell).floor() as i64, (p.y / cell).floor() as i64);
        let mut grid: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
        for (k, p) in coords.iter().enumerate() {
            grid.entry(key(p)).or_default().push(k);
        }
        for (i, p) in coords.iter().enumerate() {
            let (cx, cy) = key(p);
            for dx in -1i64..=1 {
                for dy in -1i64..=1 {
                    let Some(bucket) = grid.get(&(cx.saturating_add(dx), cy.saturating_add(dy)))
                    else {
                        continue;
                    };
                    for &j in bucket {
                        if j > i && model.in_range(p, &coords[j]) {
                            nbrs[i].push(j);
                            nbrs[j].push(i);
                        }
                    }
                }
            }
        }
        for list in &mut nbrs {
            list.sort_unstable();
            list.dedup();
        }
    }
    Adjacency::from_sorted_lists(points.shared_ids(), nbrs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::UndirectedGraph;

    #[test]
    fn duplicate_ids_rejected() {
        let err = PointSet::new(vec![
            (NodeId::Num(1), Point::new(0.0, 0.0)),
            (NodeId::Num(1), Point::new(1.0, 0.0)),
        ])
        .unwrap_err();
        assert!(matches!(err, TopoError::DuplicateId(NodeId::Num(1))));
    }

    #[test]
    fn non_finite_rejected() {
        assert!(PointSet::from_coords(vec![(0.0, f64::NAN)]).is_err());
        assert!(PointSet::from_coords(vec![(f64::INFINITY, 0.0)]).is_err());
    }

    #[test]
    fn range_must_be_positive() {
        assert!(DiskModel::new(0.0).is_err());
        assert!(DiskModel::new(-1.0).is_err());
        assert!(DiskModel::new(f64::NAN).is_err());
        assert!(DiskModel::new(0.5).is_ok());
    }

    #[test]
    fn single_node_has_no_neighbors() {
        let pts = PointSet::from_coords(vec![(0.0, 0.0)]).unwrap();
        let adj = build_gilbert(&pts, &DiskModel::new(1.0).unwrap());
        assert_eq!(adj.edge_count(), 0);
        assert!(adj.neighbors(0).is_empty());
    }

    #[test]
    fn boundary_distance_is_in_range() {
        let pts = PointSet::from_coords(vec![(0.0, 0.0), (0.75, 0.0)]).unwrap();
        let adj = build_gilbert(&pts, &DiskModel::new(0.75).unwrap());
        assert_eq!(adj.neighbors(0), &[1]);
        let adj = build_gilbert(&pts, &DiskModel::new(0.75 - 1e-12).unwrap());
        assert_eq!(adj.edge_count(), 0);
    }

    #[test]
    fn coincident_points_are_neighbors() {
        let pts = PointSet::from_coords(vec![(0.3, 0.3), (0.3, 0.3)]).unwrap();
        let adj = build_gilbert(&pts, &DiskModel::new(0.01).unwrap());
        assert_eq!(adj.edge_count(), 1);
    }

    #[test]
    fn density_conversion() {
        let m = DiskModel::from_density(1000, 20.0).unwrap();
        let area = std::f64::consts::PI * m.range() * m.range();
        assert!((area - 0.02).abs() < 1e-15);
    }
}

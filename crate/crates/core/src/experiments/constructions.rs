//! Hand-built instances that reach or break the worst-case bounds.

use std::f64::consts::PI;

use crate::error::{Result, TopoError};
use crate::geometry::{DiskModel, Point, PointSet};
use crate::id::NodeId;

/// Eleven nodes on which the lesser-neighborhood rule gives node 6 degree
/// exactly 10.
///
/// Node 6 sits at the origin. The others sit on the circle of radius `R` at
/// angle `2 pi ((2i) mod 10) / 10`: nodes 1..5 land on the five vertices of a
/// regular pentagon (pairwise `1.18 R` apart, so five separate components
/// below node 6), and each of 7..11 lands on the same vertex as one of 1..5,
/// so its lesser neighborhood is {that vertex, 6} and its maximum is 6.
///
/// Coordinates are pulled inward by the last bit where rounding would put a
/// ring node outside the closed disk around the origin.
pub fn construct_degree10_instance(model: &DiskModel) -> PointSet {
    let r = model.range();
    let entries = (1..=11u64).map(|i| {
        let p = if i == 6 {
            Point::new(0.0, 0.0)
        } else {
            let theta = 2.0 * PI * ((2 * i) % 10) as f64 / 10.0;
            let mut p = Point::new(r * theta.cos(), r * theta.sin());
            while p.x * p.x + p.y * p.y > r * r {
                p = Point::new(p.x * (1.0 - f64::EPSILON), p.y * (1.0 - f64::EPSILON));
            }
            p
        };
        (NodeId::Num(i), p)
    });
    PointSet::new(entries).expect("fixed construction has distinct ids and finite coordinates")
}

/// `n` nodes inside a disk of radius `epsilon * R / 2`, so every pair is in
/// range and the Gilbert graph is complete. Points follow a sunflower
/// (golden-angle) spiral; ids are `1..=n` from the center outward.
pub fn construct_complete_instance(n: usize, epsilon: f64, model: &DiskModel) -> Result<PointSet> {
    if n == 0 {
        return Err(TopoError::InvalidParameter("n must be at least 1".into()));
    }
    if !(epsilon > 0.0 && epsilon <= 1.0) {
        return Err(TopoError::InvalidParameter(format!(
            "epsilon must lie in (0, 1], got {epsilon}"
        )));
    }
    let radius = epsilon * model.range() / 2.0;
    let golden = PI * (3.0 - 5f64.sqrt());
    let coords = (0..n).map(|k| {
        let rho = radius * ((k as f64 + 0.5) / n as f64).sqrt();
        let theta = golden * k as f64;
        (rho * theta.cos(), rho * theta.sin())
    });
    PointSet::from_coords(coords)
}

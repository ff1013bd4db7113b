//! Topology control for wireless networks under the unit-disk model.
//!
//! The central algorithm ([`algorithms::run_alg1`]) needs nothing but node
//! identifiers: each node looks at its neighbors with smaller ids, splits
//! them into the components they form among themselves, and links to the
//! largest id in each component. The result is connected whenever the
//! unit-disk graph is, has at most `5n` edges, and no node has degree above
//! 10.
//!
//! Alongside it live a minimum-degree extension, an unbounded-degree variant,
//! position-aware baselines (XTC, k-Neigh), a message-level protocol
//! simulator, and a Monte-Carlo harness for random placements.

pub mod algorithms;
pub mod error;
pub mod experiments;
pub mod geometry;
pub mod graph;
pub mod id;
pub mod io;
pub mod local;
pub mod metrics;
pub mod paths;
pub mod protocol;
pub mod verify;

pub use error::{Result, TopoError};
pub use geometry::{build_gilbert, DiskModel, Point, PointSet};
pub use graph::{Adjacency, Partition, Topology, UndirectedGraph};
pub use id::NodeId;
pub use local::{ConnectionChoice, LocalView};

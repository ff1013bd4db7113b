use crate::id::NodeId;

/// Errors raised by graph construction, the topology-control rules and the
/// experiment harness.
#[derive(Debug, thiserror::Error)]
pub enum TopoError {
    #[error("duplicate node id {0}")]
    DuplicateId(NodeId),
    #[error("node {0} has a non-finite coordinate")]
    NonFiniteCoordinate(NodeId),
    #[error("communication range must be finite and strictly positive, got {0}")]
    InvalidRange(f64),
    #[error("unknown node id {0}")]
    UnknownNode(NodeId),
    #[error("inconsistent local view at node {node}: {reason}")]
    InconsistentView { node: NodeId, reason: String },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("path cost requires two distinct nodes, got {0} twice")]
    SameEndpoints(NodeId),
    #[error("undefined stretch: nodes {0} and {1} are not connected in the Gilbert graph")]
    UndefinedStretch(NodeId, NodeId),
    #[error("edge ({0}, {1}) is not part of the source adjacency")]
    NotASubgraph(NodeId, NodeId),
    #[error("graphs are defined over different node sets")]
    NodeSetMismatch,
    #[error("unknown algorithm descriptor `{0}`")]
    UnknownAlgorithm(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("empty input: {0}")]
    Empty(&'static str),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = TopoError> = std::result::Result<T, E>;

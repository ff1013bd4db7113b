//! Node identifiers.
//!
//! Every node carries a unique, totally ordered identifier. The canonical
//! form is a natural number; nodes may instead carry an opaque byte string
//! (a MAC-style address) compared lexicographically. All algorithms only
//! ever compare identifiers, so both forms behave identically.

use std::fmt;
use std::sync::Arc;

/// A unique, totally ordered node identifier.
///
/// Numeric ids order before byte-string ids so that the order stays total
/// even for mixed networks.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NodeId {
    Num(u64),
    Label(Arc<[u8]>),
}

impl NodeId {
    pub fn label(bytes: impl AsRef<[u8]>) -> Self {
        NodeId::Label(Arc::from(bytes.as_ref()))
    }

    pub fn as_num(&self) -> Option<u64> {
        match self {
            NodeId::Num(n) => Some(*n),
            NodeId::Label(_) => None,
        }
    }

    /// Renders the id in the CSV form: decimal for numbers, double-quoted
    /// (with `""` escaping) for byte strings.
    pub fn to_csv_field(&self) -> String {
        match self {
            NodeId::Num(n) => n.to_string(),
            NodeId::Label(b) => {
                let s = String::from_utf8_lossy(b);
                format!("\"{}\"", s.replace('"', "\"\""))
            }
        }
    }
}

impl From<u64> for NodeId {
    fn from(n: u64) -> Self {
        NodeId::Num(n)
    }
}

impl From<&str> for NodeId {
    fn from(s: &str) -> Self {
        NodeId::label(s)
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NodeId::Num(n) => write!(f, "{n}"),
            NodeId::Label(b) => write!(f, "{}", String::from_utf8_lossy(b)),
        }
    }
}

impl fmt::Debug for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NodeId::Num(n) => write!(f, "{n}"),
            NodeId::Label(b) => write!(f, "{:?}", String::from_utf8_lossy(b)),
        }
    }
}

impl serde::Serialize for NodeId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            NodeId::Num(n) => s.serialize_u64(*n),
            NodeId::Label(b) => s.serialize_str(&String::from_utf8_lossy(b)),
        }
    }
}

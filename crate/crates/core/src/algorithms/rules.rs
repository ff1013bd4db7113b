//! Identifier-only connection rules. Each one maps a [`LocalView`] to the
//! neighbors the node connects to; none of them can see positions.

use crate::error::{Result, TopoError};
use crate::id::NodeId;
use crate::local::{ConnectionChoice, LocalView};

/// Connect to the largest id in every component of the lesser
/// neighborhood.
pub fn alg1_choice(view: &LocalView) -> ConnectionChoice {
    let targets = view
        .lesser_blocks()
        .into_iter()
        .filter_map(|block| block.last().cloned())
        .collect();
    ConnectionChoice::new(view.me().clone(), targets)
}

/// Minimum-degree rule. Starts from [`alg1_choice`], then tops up with the
/// largest remaining lesser neighbors and, once those run out, the smallest
/// greater neighbors, until `delta` targets are chosen or no neighbor is
/// left.
pub fn alg2_choice(view: &LocalView, delta: usize) -> Result<ConnectionChoice> {
    if delta < 1 {
        return Err(TopoError::InvalidParameter(
            "minimum degree delta must be at least 1".into(),
        ));
    }
    let mut chosen = alg1_choice(view).targets;
    let lesser = view.lesser();
    for cand in lesser.iter().rev() {
        if chosen.len() >= delta {
            break;
        }
        if !chosen.contains(cand) {
            chosen.push(cand.clone());
        }
    }
    for cand in view.greater() {
        if chosen.len() >= delta {
            break;
        }
        chosen.push(cand.clone());
    }
    Ok(ConnectionChoice::new(view.me().clone(), chosen))
}

/// Picks one representative from a lesser-neighborhood component. Blocks
/// are passed sorted ascending and are never empty.
pub trait BlockPicker: Send + Sync {
    fn pick(&self, block: &[NodeId]) -> NodeId;
}

impl<F> BlockPicker for F
where
    F: Fn(&[NodeId]) -> NodeId + Send + Sync,
{
    fn pick(&self, block: &[NodeId]) -> NodeId {
        self(block)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MinId;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MaxId;

impl BlockPicker for MinId {
    fn pick(&self, block: &[NodeId]) -> NodeId {
        block[0].clone()
    }
}

impl BlockPicker for MaxId {
    fn pick(&self, block: &[NodeId]) -> NodeId {
        block[block.len() - 1].clone()
    }
}

/// One node per lesser-neighborhood component, chosen by `picker`. With
/// [`MaxId`] this is [`alg1_choice`]; with [`MinId`] the degree is no longer
/// bounded.
pub fn variant_choice(view: &LocalView, picker: &dyn BlockPicker) -> ConnectionChoice {
    let targets = view
        .lesser_blocks()
        .iter()
        .map(|block| picker.pick(block))
        .collect();
    ConnectionChoice::new(view.me().clone(), targets)
}

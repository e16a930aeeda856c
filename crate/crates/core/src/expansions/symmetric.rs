use alloc::vec::Vec;

use super::{ExpansionResult, Lift, LiftRule, NodeRole};
use crate::graph::{Graph, ThresholdDist, ThresholdInstance};
use crate::{Error, Result};

/// Largest instance [`symmetric_expansion`] will build.
pub const DEFAULT_NODE_GUARD: usize = 1 << 20;

fn is_symmetric_node(d: usize, k: u32) -> bool {
    d % 2 == 1 && k as usize == d.div_ceil(2)
}

/// Every degree odd and every threshold `(d_i + 1) / 2`.
pub fn is_symmetric_model(g: &Graph, k: &ThresholdDist) -> bool {
    k.len() == g.n() && (0..g.n()).all(|i| is_symmetric_node(g.degree(i), k[i]))
}

/// Which non-symmetric node to fix next.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub enum PivotOrder {
    #[default]
    Lowest,
    Highest,
}

fn pick(g: &Graph, k: &ThresholdDist, order: PivotOrder) -> Option<usize> {
    let eligible = |&i: &usize| !is_symmetric_node(g.degree(i), k[i]);
    match order {
        PivotOrder::Lowest => (0..g.n()).find(eligible),
        PivotOrder::Highest => (0..g.n()).rev().find(eligible),
    }
}

/// Lowest node that is not already symmetric.
pub fn pivot(g: &Graph, k: &ThresholdDist) -> Option<usize> {
    pick(g, k, PivotOrder::Lowest)
}

/// Attach `d_i + 1` Y-shaped gadgets to the pivot `i` and raise its threshold
/// to `d_i + 1`.
///
/// Gadget `m` occupies nodes `n + 3m` (centre, threshold 2) and the two leaves
/// after it (threshold 1). Under the lift the first `min(k_i, d_i + 1)` gadgets
/// are frozen at `W`, the remaining ones at `B`.
pub fn one_step_symmetric_expansion(
    g: &Graph,
    k: &ThresholdDist,
) -> Result<ExpansionResult<ThresholdInstance>> {
    k.check_len(g.n())?;
    let i = pivot(g, k).ok_or(Error::AlreadySymmetric)?;
    expand_at(g, k, i)
}

fn expand_at(g: &Graph, k: &ThresholdDist, i: usize) -> Result<ExpansionResult<ThresholdInstance>> {
    let n = g.n();
    let d = g.degree(i);
    let blocks = d + 1;
    let mut edges = g.edges().to_vec();
    let mut thresholds = k.as_slice().to_vec();
    thresholds[i] = blocks as u32;
    let mut rules: Vec<LiftRule> = (0..n).map(LiftRule::Copy).collect();
    let mut node_map: Vec<NodeRole> = (0..n).map(|node| NodeRole::Original { node }).collect();
    let white_blocks = (k[i] as usize).min(blocks);
    for m in 0..blocks {
        let c = n + 3 * m;
        edges.extend([(i, c), (c, c + 1), (c, c + 2)]);
        thresholds.extend([2, 1, 1]);
        let frozen = LiftRule::Const(m >= white_blocks);
        rules.extend([frozen; 3]);
        node_map.push(NodeRole::GadgetCenter { pivot: i, block: m });
        node_map.extend((1..=2).map(|leaf| NodeRole::GadgetLeaf {
            pivot: i,
            block: m,
            leaf,
        }));
    }
    let graph = Graph::with_components(n + 3 * blocks, &edges)?;
    Ok(ExpansionResult {
        instance: ThresholdInstance::new(graph, ThresholdDist::new(thresholds))?,
        lift: Lift::new(n, rules),
        node_map,
    })
}

/// Repeat the one-step expansion until the instance is symmetric.
pub fn symmetric_expansion(
    g: &Graph,
    k: &ThresholdDist,
) -> Result<ExpansionResult<ThresholdInstance>> {
    symmetric_expansion_with(g, k, PivotOrder::Lowest, DEFAULT_NODE_GUARD)
}

pub fn symmetric_expansion_with(
    g: &Graph,
    k: &ThresholdDist,
    order: PivotOrder,
    node_guard: usize,
) -> Result<ExpansionResult<ThresholdInstance>> {
    k.check_len(g.n())?;
    // Pivots never change the degree or threshold of other nodes, and gadget
    // nodes are born symmetric, so the final size is known upfront.
    let target: usize = g.n()
        + (0..g.n())
            .filter(|&i| !is_symmetric_node(g.degree(i), k[i]))
            .map(|i| 3 * (g.degree(i) + 1))
            .sum::<usize>();
    if target > node_guard {
        return Err(Error::GuardExceeded {
            what: "symmetric expansion size",
            limit: node_guard as u64,
        });
    }
    let mut current = ExpansionResult {
        instance: ThresholdInstance::new(g.clone(), k.clone())?,
        lift: Lift::identity(g.n()),
        node_map: (0..g.n()).map(|node| NodeRole::Original { node }).collect(),
    };
    while let Some(i) = pick(&current.instance.graph, &current.instance.thresholds, order) {
        let next = expand_at(&current.instance.graph, &current.instance.thresholds, i)?;
        let node_map = next
            .node_map
            .iter()
            .map(|role| match *role {
                NodeRole::Original { node } => current.node_map[node],
                other => other,
            })
            .collect();
        current = ExpansionResult {
            lift: current.lift.then(&next.lift),
            instance: next.instance,
            node_map,
        };
    }
    Ok(current)
}

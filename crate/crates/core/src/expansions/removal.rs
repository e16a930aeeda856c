use alloc::vec;
use alloc::vec::Vec;

use crate::dynamics::Action;
use crate::graph::{Graph, ThresholdDist};
use crate::{Error, Result};

/// One component left after deleting a pinned node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedComponent {
    pub graph: Graph,
    pub thresholds: ThresholdDist,
    /// `relabel[new] = old`.
    pub relabel: Vec<usize>,
}

/// Delete node `i`, which plays `c` forever. When `c` is `B` its neighbours
/// need one fewer `B` neighbour (never below 0). Returns the components of
/// what remains, ordered by smallest original id.
pub fn remove_constant_node(
    g: &Graph,
    k: &ThresholdDist,
    i: usize,
    c: Action,
) -> Result<Vec<ReducedComponent>> {
    k.check_len(g.n())?;
    if i >= g.n() {
        return Err(Error::NodeOutOfRange { node: i, n: g.n() });
    }
    let mut thresholds = k.as_slice().to_vec();
    if c.is_black() {
        for &j in g.neighbors(i) {
            thresholds[j] = thresholds[j].saturating_sub(1);
        }
    }
    let rest: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .copied()
        .filter(|&(u, v)| u != i && v != i)
        .collect();
    let without = Graph::with_components(g.n(), &rest)?;
    let mut out = Vec::new();
    for members in without.components() {
        if members == [i] {
            continue;
        }
        let mut new_id = vec![usize::MAX; g.n()];
        for (x, &old) in members.iter().enumerate() {
            new_id[old] = x;
        }
        let edges: Vec<_> = rest
            .iter()
            .filter(|&&(u, _)| new_id[u] != usize::MAX)
            .map(|&(u, v)| (new_id[u], new_id[v]))
            .collect();
        out.push(ReducedComponent {
            graph: Graph::new(members.len(), &edges)?,
            thresholds: ThresholdDist::new(members.iter().map(|&old| thresholds[old]).collect()),
            relabel: members,
        });
    }
    Ok(out)
}

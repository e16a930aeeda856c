use alloc::vec::Vec;

use super::{ExpansionResult, Lift, LiftRule, NodeRole};
use crate::graph::{Graph, ThresholdDist, ThresholdInstance};
use crate::Result;

// Mirror of node i is n + i; each edge {u, v} becomes {u, v'} and {v, u'}.
fn double_cover(g: &Graph) -> Result<Graph> {
    let n = g.n();
    let edges: Vec<_> = g
        .edges()
        .iter()
        .flat_map(|&(u, v)| [(u, n + v), (v, n + u)])
        .collect();
    Graph::with_components(2 * n, &edges)
}

fn roles(n: usize) -> Vec<NodeRole> {
    (0..n)
        .map(|node| NodeRole::Original { node })
        .chain((0..n).map(|node| NodeRole::Mirror { node }))
        .collect()
}

/// Bipartite double cover with the thresholds copied to the mirrors.
///
/// For a bipartite input the cover is two disjoint copies of the graph, so the
/// result may be disconnected.
pub fn bipartite_expansion(
    g: &Graph,
    k: &ThresholdDist,
) -> Result<ExpansionResult<ThresholdInstance>> {
    k.check_len(g.n())?;
    let n = g.n();
    let graph = double_cover(g)?;
    let mut thresholds = k.as_slice().to_vec();
    thresholds.extend_from_slice(k.as_slice());
    let lift = Lift::new(n, (0..n).chain(0..n).map(LiftRule::Copy).collect());
    Ok(ExpansionResult {
        instance: ThresholdInstance::new(graph, ThresholdDist::new(thresholds))?,
        lift,
        node_map: roles(n),
    })
}

/// Plain threshold instance simulating the complemented map `¬G_k`.
///
/// Originals get `d_i - k_i + 1` (0 when `k_i > d_i + 1`, where `¬G_k` always
/// plays `B`), mirrors keep `k_i`; the lift negates the mirrors.
pub fn inverted_to_primary(
    g: &Graph,
    k: &ThresholdDist,
) -> Result<ExpansionResult<ThresholdInstance>> {
    k.check_len(g.n())?;
    let n = g.n();
    let graph = double_cover(g)?;
    let mut thresholds: Vec<u32> = (0..n)
        .map(|i| (g.degree(i) as i64 - i64::from(k[i]) + 1).max(0) as u32)
        .collect();
    thresholds.extend_from_slice(k.as_slice());
    let lift = Lift::new(
        n,
        (0..n)
            .map(LiftRule::Copy)
            .chain((0..n).map(LiftRule::Negate))
            .collect(),
    );
    Ok(ExpansionResult {
        instance: ThresholdInstance::new(graph, ThresholdDist::new(thresholds))?,
        lift,
        node_map: roles(n),
    })
}

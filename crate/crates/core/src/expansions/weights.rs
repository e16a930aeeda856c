use alloc::vec;
use alloc::vec::Vec;

use super::{ExpansionResult, Lift, LiftRule, NodeRole};
use crate::dynamics::WeightedGraph;
use crate::graph::{Graph, ThresholdDist, ThresholdInstance};
use crate::{Error, Result};

/// Node budget `N * n` for [`integer_weights_to_unit`].
pub const DEFAULT_BLOWUP_GUARD: usize = 4096;

fn reject_loops(w: &WeightedGraph) -> Result<()> {
    match w.loop_weights().iter().position(|&x| x != 0) {
        Some(i) => Err(Error::WeightOutOfRange {
            u: i,
            v: i,
            weight: w.loop_weights()[i],
        }),
        None => Ok(()),
    }
}

/// Unweighted instance simulating a `±1`-weighted one.
///
/// Positive edges are copied on both sides, negative edges become cross
/// edges. Originals get `k_i + d⁻_i`, mirrors `d⁺_i - k_i + 1`; the lift
/// negates the mirrors. Thresholds must lie in `[-d⁻_i, d⁺_i + 1]`.
pub fn signed_to_primary(w: &WeightedGraph) -> Result<ExpansionResult<ThresholdInstance>> {
    reject_loops(w)?;
    let n = w.n();
    let mut edges = Vec::with_capacity(2 * w.graph().edge_count());
    for (u, v, x) in w.weighted_edges() {
        match x {
            1 => edges.extend([(u, v), (n + u, n + v)]),
            -1 => edges.extend([(u, n + v), (v, n + u)]),
            weight => return Err(Error::WeightOutOfRange { u, v, weight }),
        }
    }
    let mut thresholds = vec![0u32; 2 * n];
    for i in 0..n {
        let (pos, neg) = w.signed_degrees(i);
        let k = w.thresholds()[i];
        if k < -(neg as i64) || k > pos as i64 + 1 {
            return Err(Error::ValidityViolated {
                node: i,
                threshold: k,
            });
        }
        thresholds[i] = (k + neg as i64) as u32;
        thresholds[n + i] = (pos as i64 - k + 1) as u32;
    }
    let graph = Graph::with_components(2 * n, &edges)?;
    Ok(ExpansionResult {
        instance: ThresholdInstance::new(graph, ThresholdDist::new(thresholds))?,
        lift: Lift::new(
            n,
            (0..n)
                .map(LiftRule::Copy)
                .chain((0..n).map(LiftRule::Negate))
                .collect(),
        ),
        node_map: (0..n)
            .map(|node| NodeRole::Original { node })
            .chain((0..n).map(|node| NodeRole::Mirror { node }))
            .collect(),
    })
}

/// `±1`-weighted instance simulating an integer-weighted one.
///
/// With `N` the product of `|w_e|` over all edges, node `i` gets `N` copies
/// indexed by `ω ∈ Π[|w_e|]` (copy `ω` of node `i` is `ω·n + i`, `ω` read in
/// mixed radix with the first edge least significant). Along edge `e = {i, j}`
/// each copy of `i` is joined to the `|w_e|` copies of `j` that agree with it
/// outside coordinate `e`, with weight `sign(w_e)`.
pub fn integer_weights_to_unit(
    w: &WeightedGraph,
    node_guard: usize,
) -> Result<ExpansionResult<WeightedGraph>> {
    reject_loops(w)?;
    let n = w.n();
    let too_big = || Error::GuardExceeded {
        what: "weight blow-up nodes",
        limit: node_guard as u64,
    };
    let mut strides = Vec::with_capacity(w.graph().edge_count());
    let mut copies: usize = 1;
    for x in w.edge_weights() {
        strides.push(copies);
        copies = copies
            .checked_mul(x.unsigned_abs() as usize)
            .ok_or_else(too_big)?;
    }
    if copies.checked_mul(n).is_none_or(|total| total > node_guard) {
        return Err(too_big());
    }
    let mut edges = Vec::new();
    for (e, (u, v, x)) in w.weighted_edges().enumerate() {
        let r = x.unsigned_abs() as usize;
        let stride = strides[e];
        let sign = x.signum();
        for omega in (0..copies).filter(|o| (o / stride) % r == 0) {
            for m in 0..r {
                for m2 in 0..r {
                    edges.push((
                        (omega + m * stride) * n + u,
                        (omega + m2 * stride) * n + v,
                        sign,
                    ));
                }
            }
        }
    }
    let pairs: Vec<_> = edges.iter().map(|&(a, b, _)| (a, b)).collect();
    let graph = Graph::with_components(copies * n, &pairs)?;
    let thresholds = (0..copies)
        .flat_map(|_| w.thresholds().iter().copied())
        .collect();
    let instance = WeightedGraph::assemble(graph, &edges, &[], thresholds)?;
    Ok(ExpansionResult {
        instance,
        lift: Lift::new(n, (0..copies * n).map(|t| LiftRule::Copy(t % n)).collect()),
        node_map: (0..copies * n)
            .map(|t| NodeRole::WeightCopy {
                node: t % n,
                copy: t / n,
            })
            .collect(),
    })
}

/// Loop-free weighted instance on `2n` nodes: two copies of the graph, and a
/// cross edge of weight `w_ii` between node `i` and its mirror for every loop.
pub fn remove_self_loops(w: &WeightedGraph) -> Result<ExpansionResult<WeightedGraph>> {
    let n = w.n();
    let mut edges: Vec<(usize, usize, i64)> = w
        .weighted_edges()
        .flat_map(|(u, v, x)| [(u, v, x), (n + u, n + v, x)])
        .collect();
    for (i, &x) in w.loop_weights().iter().enumerate() {
        if x != 0 {
            edges.push((i, n + i, x));
        }
    }
    let pairs: Vec<_> = edges.iter().map(|&(a, b, _)| (a, b)).collect();
    let graph = Graph::with_components(2 * n, &pairs)?;
    let mut thresholds = w.thresholds().to_vec();
    thresholds.extend_from_slice(w.thresholds());
    Ok(ExpansionResult {
        instance: WeightedGraph::assemble(graph, &edges, &[], thresholds)?,
        lift: Lift::new(n, (0..n).chain(0..n).map(LiftRule::Copy).collect()),
        node_map: (0..n)
            .map(|node| NodeRole::Original { node })
            .chain((0..n).map(|node| NodeRole::Mirror { node }))
            .collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{step, step_weighted};
    use crate::expansions::{all_profiles, commutation_check};

    fn holds_weighted(w: &WeightedGraph, r: &ExpansionResult<WeightedGraph>) -> bool {
        commutation_check(
            |a| step_weighted(w, a).unwrap(),
            |a| step_weighted(&r.instance, a).unwrap(),
            &r.lift,
            all_profiles(w.n()),
        )
        .holds
    }

    #[test]
    fn negative_edge_becomes_cross_edges() {
        let w = WeightedGraph::from_parts(2, &[(0, 1, -1)], &[], vec![0, 0]).unwrap();
        let r = signed_to_primary(&w).unwrap();
        assert_eq!(r.instance.graph.edges(), &[(0, 3), (1, 2)]);
        assert_eq!(r.instance.thresholds.as_slice(), &[1, 1, 1, 1]);
        let rep = commutation_check(
            |a| step_weighted(&w, a).unwrap(),
            |a| step(&r.instance.graph, &r.instance.thresholds, a).unwrap(),
            &r.lift,
            all_profiles(2),
        );
        assert!(rep.holds && rep.checked == 4);
    }

    #[test]
    fn signed_validation() {
        let w = WeightedGraph::from_parts(2, &[(0, 1, 2)], &[], vec![0, 0]).unwrap();
        assert_eq!(
            signed_to_primary(&w).unwrap_err(),
            Error::WeightOutOfRange {
                u: 0,
                v: 1,
                weight: 2
            }
        );
        let w = WeightedGraph::from_parts(2, &[(0, 1, -1)], &[], vec![-2, 0]).unwrap();
        assert_eq!(
            signed_to_primary(&w).unwrap_err(),
            Error::ValidityViolated {
                node: 0,
                threshold: -2
            }
        );
    }

    #[test]
    fn weight_two_edge_blows_up_to_square() {
        let w = WeightedGraph::from_parts(2, &[(0, 1, 2)], &[], vec![1, 1]).unwrap();
        let r = integer_weights_to_unit(&w, DEFAULT_BLOWUP_GUARD).unwrap();
        assert_eq!(r.instance.n(), 4);
        assert_eq!(
            r.instance.graph().edges(),
            &[(0, 1), (0, 3), (1, 2), (2, 3)]
        );
        assert!(holds_weighted(&w, &r));
    }

    #[test]
    fn mixed_path_blowup() {
        let w = WeightedGraph::from_parts(3, &[(0, 1, 2), (1, 2, -1)], &[], vec![1, 0, 0]).unwrap();
        let r = integer_weights_to_unit(&w, DEFAULT_BLOWUP_GUARD).unwrap();
        assert_eq!(r.instance.n(), 6);
        assert!(holds_weighted(&w, &r));
        let unit =
            WeightedGraph::from_parts(3, &[(0, 1, 1), (1, 2, -1)], &[], vec![1, 0, 0]).unwrap();
        assert_eq!(
            integer_weights_to_unit(&unit, DEFAULT_BLOWUP_GUARD)
                .unwrap()
                .instance,
            unit
        );
        assert!(matches!(
            integer_weights_to_unit(&w, 5),
            Err(Error::GuardExceeded { .. })
        ));
    }

    #[test]
    fn loop_doubling() {
        let w = WeightedGraph::from_parts(2, &[(0, 1, 1)], &[(0, 1)], vec![1, 1]).unwrap();
        let r = remove_self_loops(&w).unwrap();
        assert_eq!(r.instance.graph().edges(), &[(0, 1), (0, 2), (2, 3)]);
        assert!(!r.instance.has_self_loops());
        assert!(holds_weighted(&w, &r));
        assert!(matches!(
            integer_weights_to_unit(&w, 100),
            Err(Error::WeightOutOfRange { u: 0, v: 0, .. })
        ));
    }
}

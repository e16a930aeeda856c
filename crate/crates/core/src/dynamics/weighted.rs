use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;

use crate::graph::{ActionProfile, Graph, TypeDist};
use crate::{Error, Result};

/// Graph with nonzero integer edge weights, optional self-loops and integer
/// (possibly negative) thresholds.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightedGraph {
    graph: Graph,
    edge_weights: Vec<i64>,
    loop_weights: Vec<i64>,
    thresholds: Vec<i64>,
    // (neighbour, weight), self-loop included when nonzero
    weighted_adjacency: Vec<Vec<(usize, i64)>>,
}

impl WeightedGraph {
    /// `edge_weights` runs parallel to `graph.edges()`; `loop_weights` has one
    /// entry per node, 0 meaning no loop.
    pub fn new(
        graph: Graph,
        edge_weights: Vec<i64>,
        loop_weights: Vec<i64>,
        thresholds: Vec<i64>,
    ) -> Result<Self> {
        let n = graph.n();
        if edge_weights.len() != graph.edge_count() {
            return Err(Error::LengthMismatch {
                expected: graph.edge_count(),
                found: edge_weights.len(),
            });
        }
        for (len, _) in [(loop_weights.len(), 0), (thresholds.len(), 1)] {
            if len != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    found: len,
                });
            }
        }
        if let Some((&(u, v), _)) = graph
            .edges()
            .iter()
            .zip(&edge_weights)
            .find(|(_, &w)| w == 0)
        {
            return Err(Error::WeightOutOfRange { u, v, weight: 0 });
        }
        let mut weighted_adjacency = vec![Vec::new(); n];
        for (&(u, v), &w) in graph.edges().iter().zip(&edge_weights) {
            weighted_adjacency[u].push((v, w));
            weighted_adjacency[v].push((u, w));
        }
        for (i, &w) in loop_weights.iter().enumerate() {
            if w != 0 {
                weighted_adjacency[i].push((i, w));
            }
        }
        for list in &mut weighted_adjacency {
            list.sort_unstable();
        }
        Ok(Self {
            graph,
            edge_weights,
            loop_weights,
            thresholds,
            weighted_adjacency,
        })
    }

    /// Connected weighted graph from `(u, v, w)` triples and `(node, w)` loops.
    pub fn from_parts(
        n: usize,
        edges: &[(usize, usize, i64)],
        loops: &[(usize, i64)],
        thresholds: Vec<i64>,
    ) -> Result<Self> {
        let pairs: Vec<_> = edges.iter().map(|&(u, v, _)| (u, v)).collect();
        let graph = Graph::new(n, &pairs)?;
        Self::assemble(graph, edges, loops, thresholds)
    }

    pub(crate) fn assemble(
        graph: Graph,
        edges: &[(usize, usize, i64)],
        loops: &[(usize, i64)],
        thresholds: Vec<i64>,
    ) -> Result<Self> {
        let n = graph.n();
        let mut edge_weights = vec![0; graph.edge_count()];
        for &(u, v, w) in edges {
            let key = (u.min(v), u.max(v));
            let idx = graph
                .edges()
                .binary_search(&key)
                .expect("edge present in graph");
            edge_weights[idx] = w;
        }
        let mut loop_weights = vec![0; n];
        for &(i, w) in loops {
            if i >= n {
                return Err(Error::NodeOutOfRange { node: i, n });
            }
            loop_weights[i] = w;
        }
        Self::new(graph, edge_weights, loop_weights, thresholds)
    }

    /// Unit weights, no loops: the weighted view of an unweighted instance.
    pub fn unit(graph: Graph, thresholds: Vec<i64>) -> Result<Self> {
        let m = graph.edge_count();
        let n = graph.n();
        Self::new(graph, vec![1; m], vec![0; n], thresholds)
    }

    pub fn with_thresholds(&self, thresholds: Vec<i64>) -> Result<Self> {
        Self::new(
            self.graph.clone(),
            self.edge_weights.clone(),
            self.loop_weights.clone(),
            thresholds,
        )
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Parallel to `graph().edges()`.
    pub fn edge_weights(&self) -> &[i64] {
        &self.edge_weights
    }

    pub fn thresholds(&self) -> &[i64] {
        &self.thresholds
    }

    pub fn loop_weights(&self) -> &[i64] {
        &self.loop_weights
    }

    pub fn has_self_loops(&self) -> bool {
        self.loop_weights.iter().any(|&w| w != 0)
    }

    /// `(u, v, w)` with `u < v`, in canonical edge order.
    pub fn weighted_edges(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        self.graph
            .edges()
            .iter()
            .zip(&self.edge_weights)
            .map(|(&(u, v), &w)| (u, v, w))
    }

    /// Neighbours of `i` with weights, `i` itself included when looped.
    pub fn weighted_neighbors(&self, i: usize) -> &[(usize, i64)] {
        &self.weighted_adjacency[i]
    }

    /// `d^+_i` and `d^-_i`: number of positive and negative edges at `i`.
    pub fn signed_degrees(&self, i: usize) -> (usize, usize) {
        let mut pos = 0;
        let mut neg = 0;
        for &(j, w) in &self.weighted_adjacency[i] {
            if j != i {
                if w > 0 {
                    pos += 1;
                } else {
                    neg += 1;
                }
            }
        }
        (pos, neg)
    }

    pub(crate) fn black_sum(&self, a: &ActionProfile, i: usize) -> i64 {
        self.weighted_adjacency[i]
            .iter()
            .filter(|&&(j, _)| a.get(j))
            .map(|&(_, w)| w)
            .sum()
    }
}

/// Node `i` plays `B` iff the weights towards `B` neighbours (itself included
/// when looped) sum to at least `k_i`.
pub fn step_weighted(w: &WeightedGraph, a: &ActionProfile) -> Result<ActionProfile> {
    a.check_len(w.n())?;
    let mut out = ActionProfile::all_white(w.n());
    for i in 0..w.n() {
        if w.black_sum(a, i) >= w.thresholds[i] {
            out.set(i, true);
        }
    }
    Ok(out)
}

/// `k_i = floor(theta_i) + 1` with `theta_i = q_i * sum of w_ij` over the
/// closed neighbourhood. The thresholds already stored in `w` are ignored.
pub fn weighted_types_to_thresholds(w: &WeightedGraph, q: &TypeDist) -> Result<Vec<i64>> {
    q.check_len(w.n())?;
    Ok((0..w.n())
        .map(|i| {
            let total: i128 = w
                .weighted_neighbors(i)
                .iter()
                .map(|&(_, x)| i128::from(x))
                .sum();
            let num = i128::from(*q[i].numer()) * total;
            let den = i128::from(*q[i].denom());
            (Integer::div_floor(&num, &den) + 1) as i64
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::step;
    use crate::graph::ThresholdDist;

    fn p(s: &str) -> ActionProfile {
        s.parse().unwrap()
    }

    #[test]
    fn negative_edge_example() {
        let w = WeightedGraph::from_parts(2, &[(0, 1, -1)], &[], vec![0, 0]).unwrap();
        assert_eq!(step_weighted(&w, &p("BW")).unwrap(), p("BW"));
    }

    #[test]
    fn self_loop_counts_own_action() {
        let w = WeightedGraph::from_parts(2, &[(0, 1, 1)], &[(0, 2)], vec![2, 1]).unwrap();
        assert!(step_weighted(&w, &p("BW")).unwrap().get(0));
        assert!(!step_weighted(&w, &p("WB")).unwrap().get(0));
    }

    #[test]
    fn unit_weights_reduce_to_plain_rule() {
        let g = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (0, 2)]).unwrap();
        let k = ThresholdDist::new(vec![1, 2, 0, 1]);
        let w = WeightedGraph::unit(g.clone(), vec![1, 2, 0, 1]).unwrap();
        for bits in 0..16 {
            let a = ActionProfile::from_bits(4, bits);
            assert_eq!(step_weighted(&w, &a).unwrap(), step(&g, &k, &a).unwrap());
        }
    }

    #[test]
    fn weighted_type_conversion() {
        let star = |w1, w2| {
            WeightedGraph::from_parts(3, &[(0, 1, w1), (0, 2, w2)], &[], vec![0; 3]).unwrap()
        };
        let half = TypeDist::from_pairs(&[(1, 2); 3]).unwrap();
        assert_eq!(
            weighted_types_to_thresholds(&star(1, 1), &half).unwrap()[0],
            2
        );
        assert_eq!(
            weighted_types_to_thresholds(&star(2, -1), &half).unwrap()[0],
            1
        );
        let zero = TypeDist::from_pairs(&[(0, 1); 3]).unwrap();
        assert_eq!(
            weighted_types_to_thresholds(&star(3, 1), &zero).unwrap(),
            vec![1, 1, 1]
        );
        // theta = -3/2 floors to -2
        assert_eq!(
            weighted_types_to_thresholds(&star(-2, -1), &half).unwrap()[0],
            -1
        );
    }

    #[test]
    fn zero_weight_rejected() {
        let e = WeightedGraph::from_parts(2, &[(0, 1, 0)], &[], vec![0, 0]).unwrap_err();
        assert_eq!(
            e,
            Error::WeightOutOfRange {
                u: 0,
                v: 1,
                weight: 0
            }
        );
    }
}

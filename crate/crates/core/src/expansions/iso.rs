use alloc::vec;
use alloc::vec::Vec;

use crate::graph::ThresholdInstance;
use crate::{Error, Result};

/// Search-node budget for [`find_isomorphism`].
pub const DEFAULT_ISO_BUDGET: u64 = 1 << 20;

/// A threshold-preserving isomorphism `map` with `b = map(a)`, if any.
///
/// Colour refinement on the disjoint union (initial colour: degree and
/// threshold), then individualisation with backtracking. Every returned map is
/// checked edge by edge.
pub fn find_isomorphism(
    a: &ThresholdInstance,
    b: &ThresholdInstance,
    budget: u64,
) -> Result<Option<Vec<usize>>> {
    let na = a.n();
    if na != b.n() || a.graph.edge_count() != b.graph.edge_count() {
        return Ok(None);
    }
    let total = 2 * na;
    let mut adj: Vec<Vec<usize>> = Vec::with_capacity(total);
    adj.extend((0..na).map(|i| a.graph.neighbors(i).to_vec()));
    adj.extend((0..na).map(|i| b.graph.neighbors(i).iter().map(|&j| j + na).collect()));
    let mut keys: Vec<(usize, u32)> = (0..na)
        .map(|i| (a.graph.degree(i), a.thresholds[i]))
        .collect();
    keys.extend((0..na).map(|i| (b.graph.degree(i), b.thresholds[i])));
    let colors = relabel(&keys);
    let mut s = Search {
        adj,
        na,
        budget,
        spent: 0,
    };
    let Some(map) = s.run(colors)? else {
        return Ok(None);
    };
    let ok = a
        .graph
        .edges()
        .iter()
        .all(|&(u, v)| b.graph.has_edge(map[u], map[v]))
        && (0..na).all(|i| a.thresholds[i] == b.thresholds[map[i]]);
    Ok(ok.then_some(map))
}

fn relabel<T: Ord + Clone>(keys: &[T]) -> Vec<u32> {
    let mut sorted: Vec<T> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter()
        .map(|k| sorted.binary_search(k).expect("key present") as u32)
        .collect()
}

struct Search {
    adj: Vec<Vec<usize>>,
    na: usize,
    budget: u64,
    spent: u64,
}

impl Search {
    fn refine(&self, mut colors: Vec<u32>) -> Vec<u32> {
        let mut classes = count_classes(&colors);
        loop {
            let sigs: Vec<(u32, Vec<u32>)> = (0..colors.len())
                .map(|v| {
                    let mut nb: Vec<u32> = self.adj[v].iter().map(|&u| colors[u]).collect();
                    nb.sort_unstable();
                    (colors[v], nb)
                })
                .collect();
            colors = relabel(&sigs);
            let next = count_classes(&colors);
            if next == classes {
                return colors;
            }
            classes = next;
        }
    }

    fn run(&mut self, colors: Vec<u32>) -> Result<Option<Vec<usize>>> {
        self.spent += 1;
        if self.spent > self.budget {
            return Err(Error::GuardExceeded {
                what: "isomorphism search nodes",
                limit: self.budget,
            });
        }
        let colors = self.refine(colors);
        let palette = count_classes(&colors);
        let mut left = vec![0usize; palette];
        let mut right = vec![0usize; palette];
        for (v, &c) in colors.iter().enumerate() {
            if v < self.na {
                left[c as usize] += 1;
            } else {
                right[c as usize] += 1;
            }
        }
        if left != right {
            return Ok(None);
        }
        let Some(cell) = (0..palette)
            .filter(|&c| left[c] > 1)
            .min_by_key(|&c| (left[c], c))
        else {
            let mut by_color = vec![0; palette];
            for v in self.na..colors.len() {
                by_color[colors[v] as usize] = v - self.na;
            }
            return Ok(Some(
                (0..self.na).map(|v| by_color[colors[v] as usize]).collect(),
            ));
        };
        let v = (0..self.na)
            .find(|&v| colors[v] as usize == cell)
            .expect("cell has a left member");
        let fresh = palette as u32;
        for w in (self.na..colors.len()).filter(|&w| colors[w] as usize == cell) {
            let mut next = colors.clone();
            next[v] = fresh;
            next[w] = fresh;
            if let Some(map) = self.run(next)? {
                if self.is_iso(&map) {
                    return Ok(Some(map));
                }
            }
        }
        Ok(None)
    }

    fn is_iso(&self, map: &[usize]) -> bool {
        (0..self.na).all(|u| {
            self.adj[u].iter().all(|&v| {
                self.adj[self.na + map[u]]
                    .binary_search(&(self.na + map[v]))
                    .is_ok()
            })
        })
    }
}

fn count_classes(colors: &[u32]) -> usize {
    colors.iter().copied().max().map_or(0, |m| m as usize + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Graph, ThresholdDist};

    fn inst(n: usize, edges: &[(usize, usize)], k: &[u32]) -> ThresholdInstance {
        ThresholdInstance::new(
            Graph::new(n, edges).unwrap(),
            ThresholdDist::new(k.to_vec()),
        )
        .unwrap()
    }

    #[test]
    fn relabelled_path() {
        let a = inst(4, &[(0, 1), (1, 2), (2, 3)], &[1, 2, 2, 1]);
        let b = inst(4, &[(3, 0), (0, 2), (2, 1)], &[2, 1, 2, 1]);
        let map = find_isomorphism(&a, &b, DEFAULT_ISO_BUDGET)
            .unwrap()
            .unwrap();
        for &(u, v) in a.graph.edges() {
            assert!(b.graph.has_edge(map[u], map[v]));
        }
    }

    #[test]
    fn thresholds_break_isomorphism() {
        let a = inst(3, &[(0, 1), (1, 2)], &[1, 1, 2]);
        let b = inst(3, &[(0, 1), (1, 2)], &[1, 2, 1]);
        assert_eq!(find_isomorphism(&a, &b, DEFAULT_ISO_BUDGET).unwrap(), None);
    }

    #[test]
    fn regular_graphs_need_search() {
        let hex: Vec<_> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
        let perm = [3, 5, 1, 0, 4, 2];
        let hex2: Vec<_> = hex.iter().map(|&(u, v)| (perm[u], perm[v])).collect();
        let a = inst(6, &hex, &[1; 6]);
        let b = inst(6, &hex2, &[1; 6]);
        assert!(find_isomorphism(&a, &b, DEFAULT_ISO_BUDGET)
            .unwrap()
            .is_some());
        // K_{3,3} and the triangular prism are both 3-regular on 6 nodes
        let k33 = inst(
            6,
            &[
                (0, 3),
                (0, 4),
                (0, 5),
                (1, 3),
                (1, 4),
                (1, 5),
                (2, 3),
                (2, 4),
                (2, 5),
            ],
            &[2; 6],
        );
        let prism = inst(
            6,
            &[
                (0, 1),
                (1, 2),
                (2, 0),
                (3, 4),
                (4, 5),
                (5, 3),
                (0, 3),
                (1, 4),
                (2, 5),
            ],
            &[2; 6],
        );
        assert_eq!(
            find_isomorphism(&k33, &prism, DEFAULT_ISO_BUDGET).unwrap(),
            None
        );
    }
}

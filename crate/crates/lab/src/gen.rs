//! Instance generators: exhaustive small graphs and seeded random instances.

use std::collections::BTreeSet;

use rand::seq::IndexedRandom;
use rand::Rng;
use threshold_core::dynamics::WeightedGraph;
use threshold_core::reductions::{Formula, Variant};
use threshold_core::{Graph, ThresholdDist};

fn pair_index(n: usize) -> Vec<Vec<usize>> {
    let mut idx = vec![vec![usize::MAX; n]; n];
    let mut e = 0;
    for u in 0..n {
        for v in u + 1..n {
            idx[u][v] = e;
            idx[v][u] = e;
            e += 1;
        }
    }
    idx
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// One representative of every connected graph on `n` nodes up to
/// isomorphism (1, 1, 2, 6, 21, 112 for `n = 1..=6`). Exhaustive over edge
/// sets, so only practical for `n <= 6`.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    assert!(
        (1..=6).contains(&n),
        "exhaustive generation covers 1..=6 nodes"
    );
    let idx = pair_index(n);
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let perms = permutations(n);
    let mut seen = BTreeSet::new();
    for mask in 0u32..1 << pairs.len() {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(e, _)| mask >> e & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        if edges.len() + 1 < n {
            continue;
        }
        if Graph::new(n, &edges).is_err() {
            continue;
        }
        let canon = perms
            .iter()
            .map(|p| {
                edges
                    .iter()
                    .fold(0u32, |acc, &(u, v)| acc | 1 << idx[p[u]][p[v]])
            })
            .min()
            .unwrap_or(0);
        seen.insert(canon);
    }
    seen.into_iter()
        .map(|canon| {
            let edges: Vec<_> = pairs
                .iter()
                .enumerate()
                .filter(|(e, _)| canon >> e & 1 == 1)
                .map(|(_, &p)| p)
                .collect();
            Graph::new(n, &edges).expect("canonical form of a connected graph")
        })
        .collect()
}

fn prufer_tree(n: usize, code: &[usize]) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; n];
    for &c in code {
        degree[c] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &c in code {
        let leaf = (0..n).find(|&i| degree[i] == 1).expect("a leaf exists");
        edges.push((leaf.min(c), leaf.max(c)));
        degree[leaf] -= 1;
        degree[c] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&i| degree[i] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

// Rooted canonical code of a tree (nested parentheses, children sorted).
fn rooted_code(g: &Graph, v: usize, parent: usize) -> String {
    let mut kids: Vec<String> = g
        .neighbors(v)
        .iter()
        .filter(|&&w| w != parent)
        .map(|&w| rooted_code(g, w, v))
        .collect();
    kids.sort();
    format!("({})", kids.concat())
}

fn centers(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut degree = g.degrees();
    let mut alive = n;
    let mut layer: Vec<usize> = (0..n).filter(|&i| degree[i] <= 1).collect();
    while alive > 2 {
        alive -= layer.len();
        let mut next = Vec::new();
        for &leaf in &layer {
            for &w in g.neighbors(leaf) {
                degree[w] -= 1;
                if degree[w] == 1 {
                    next.push(w);
                }
            }
        }
        layer = next;
    }
    layer
}

/// Every tree on `n` nodes up to isomorphism, by Prüfer sequences.
pub fn trees(n: usize) -> Vec<Graph> {
    assert!(
        (1..=10).contains(&n),
        "tree enumeration covers 1..=10 nodes"
    );
    if n <= 2 {
        let edges: &[(usize, usize)] = if n == 2 { &[(0, 1)] } else { &[] };
        return vec![Graph::new(n, edges).unwrap()];
    }
    let mut seen = std::collections::BTreeMap::new();
    let mut code = vec![0usize; n - 2];
    loop {
        let g = Graph::new(n, &prufer_tree(n, &code)).expect("Prüfer sequences decode to trees");
        let key = centers(&g)
            .into_iter()
            .map(|c| rooted_code(&g, c, usize::MAX))
            .min()
            .unwrap();
        seen.entry(key).or_insert(g);
        let mut i = 0;
        while i < code.len() && code[i] == n - 1 {
            code[i] = 0;
            i += 1;
        }
        if i == code.len() {
            break;
        }
        code[i] += 1;
    }
    seen.into_values().collect()
}

/// Every threshold vector with `k_i` in `0..=d_i + 1`.
pub fn all_thresholds(g: &Graph) -> impl Iterator<Item = ThresholdDist> + '_ {
    let radix: Vec<u64> = g.degrees().iter().map(|&d| d as u64 + 2).collect();
    let total: u64 = radix.iter().product();
    (0..total).map(move |mut x| {
        ThresholdDist::new(
            radix
                .iter()
                .map(|&r| {
                    let digit = x % r;
                    x /= r;
                    digit as u32
                })
                .collect(),
        )
    })
}

/// Random spanning tree plus each remaining pair with probability `p`.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut edges: Vec<(usize, usize)> = (1..n).map(|i| (rng.random_range(0..i), i)).collect();
    for u in 0..n {
        for v in u + 1..n {
            if !edges.contains(&(u, v)) && rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, &edges).expect("spanning tree keeps the graph connected")
}

pub fn random_thresholds<R: Rng>(rng: &mut R, g: &Graph) -> ThresholdDist {
    ThresholdDist::new(
        g.degrees()
            .iter()
            .map(|&d| rng.random_range(0..=d as u32 + 1))
            .collect(),
    )
}

/// Weights drawn from `weights`, a loop on each node with probability
/// `loop_p`, thresholds uniform in `k_range`.
pub fn random_weighted<R: Rng>(
    rng: &mut R,
    g: &Graph,
    weights: &[i64],
    loop_p: f64,
    k_range: std::ops::RangeInclusive<i64>,
) -> WeightedGraph {
    let ew: Vec<i64> = g
        .edges()
        .iter()
        .map(|_| *weights.choose(rng).unwrap())
        .collect();
    let lw: Vec<i64> = (0..g.n())
        .map(|_| {
            if rng.random_bool(loop_p) {
                *weights.choose(rng).unwrap()
            } else {
                0
            }
        })
        .collect();
    let k: Vec<i64> = (0..g.n())
        .map(|_| rng.random_range(k_range.clone()))
        .collect();
    WeightedGraph::new(g.clone(), ew, lw, k).expect("nonzero weights")
}

/// Monotone formula with clauses of one or two variables, renumbered so every
/// variable occurs.
pub fn random_monotone<R: Rng>(
    rng: &mut R,
    variant: Variant,
    max_vars: usize,
    max_clauses: usize,
) -> Formula {
    let m = rng.random_range(1..=max_clauses);
    let raw: Vec<Vec<usize>> = (0..m)
        .map(|_| {
            let width = rng.random_range(1..=2);
            (0..width).map(|_| rng.random_range(0..max_vars)).collect()
        })
        .collect();
    let used: BTreeSet<usize> = raw.iter().flatten().copied().collect();
    let used: Vec<usize> = used.into_iter().collect();
    let clauses: Vec<Vec<i64>> = raw
        .iter()
        .map(|c| {
            c.iter()
                .map(|v| used.binary_search(v).unwrap() as i64 + 1)
                .collect()
        })
        .collect();
    Formula::from_signed(variant, used.len(), &clauses).expect("well-formed monotone formula")
}

/// 3-CNF with `1..=max_vars` variables and `1..=max_clauses` clauses of one
/// to three literals.
pub fn random_cnf3<R: Rng>(rng: &mut R, max_vars: usize, max_clauses: usize) -> Formula {
    let n = rng.random_range(1..=max_vars);
    let m = rng.random_range(1..=max_clauses);
    let clauses: Vec<Vec<i64>> = (0..m)
        .map(|_| {
            let width = rng.random_range(1..=3);
            (0..width)
                .map(|_| {
                    let v = rng.random_range(1..=n as i64);
                    if rng.random_bool(0.5) {
                        -v
                    } else {
                        v
                    }
                })
                .collect()
        })
        .collect();
    Formula::from_signed(Variant::Cnf3, n, &clauses).expect("well-formed 3-CNF")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn connected_graph_counts() {
        let counts: Vec<usize> = (1..=6).map(|n| connected_graphs(n).len()).collect();
        assert_eq!(counts, [1, 1, 2, 6, 21, 112]);
    }

    #[test]
    fn tree_counts() {
        let counts: Vec<usize> = (1..=8).map(|n| trees(n).len()).collect();
        assert_eq!(counts, [1, 1, 1, 2, 3, 6, 11, 23]);
    }

    #[test]
    fn threshold_enumeration() {
        let g = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let all: Vec<_> = all_thresholds(&g).collect();
        assert_eq!(all.len(), 3 * 4 * 3);
        assert_eq!(all[1].as_slice(), &[1, 0, 0]);
    }
}

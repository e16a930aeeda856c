#![allow(dead_code)]

use proptest::prelude::*;
use threshold_core::{Graph, ThresholdDist};

/// Random connected graph: a random spanning tree plus extra edges.
pub fn arb_graph(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    (min_n..=max_n)
        .prop_flat_map(|n| {
            let parents: Vec<_> = (1..n).map(|i| 0..i).collect();
            (Just(n), parents, any::<u64>(), any::<u64>())
        })
        .prop_map(|(n, parents, extra, thin)| {
            let mut edges: Vec<(usize, usize)> = parents
                .into_iter()
                .enumerate()
                .map(|(i, p)| (p, i + 1))
                .collect();
            let mut bit = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if (extra & thin) >> (bit % 64) & 1 == 1 && !edges.contains(&(u, v)) {
                        edges.push((u, v));
                    }
                    bit += 1;
                }
            }
            Graph::new(n, &edges).unwrap()
        })
}

/// Random connected bipartite graph; sides follow depth parity in the tree.
pub fn arb_bipartite(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    (min_n..=max_n)
        .prop_flat_map(|n| {
            let parents: Vec<_> = (1..n).map(|i| 0..i).collect();
            (Just(n), parents, any::<u64>())
        })
        .prop_map(|(n, parents, extra)| {
            let mut side = vec![false; n];
            let mut edges = Vec::new();
            for (i, p) in parents.into_iter().enumerate() {
                side[i + 1] = !side[p];
                edges.push((p, i + 1));
            }
            let mut bit = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if side[u] != side[v]
                        && extra >> (bit % 64) & 1 == 1
                        && !edges.contains(&(u, v))
                    {
                        edges.push((u, v));
                    }
                    bit += 1;
                }
            }
            Graph::new(n, &edges).unwrap()
        })
}

pub fn arb_tree(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    (min_n..=max_n)
        .prop_flat_map(|n| {
            let parents: Vec<_> = (1..n).map(|i| 0..i).collect();
            (Just(n), parents)
        })
        .prop_map(|(n, parents)| {
            let edges: Vec<_> = parents
                .into_iter()
                .enumerate()
                .map(|(i, p)| (p, i + 1))
                .collect();
            Graph::new(n, &edges).unwrap()
        })
}

/// Thresholds in `0..=d_i + 1`, so non-valid nodes show up too.
pub fn with_thresholds(
    g: impl Strategy<Value = Graph>,
) -> impl Strategy<Value = (Graph, ThresholdDist)> {
    g.prop_flat_map(|g| {
        let ks: Vec<_> = g.degrees().into_iter().map(|d| 0..=d as u32 + 1).collect();
        (Just(g), ks)
    })
    .prop_map(|(g, k)| (g, ThresholdDist::new(k)))
}

pub fn cycle(n: usize) -> Graph {
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::new(n, &edges).unwrap()
}

/// Step computed straight from the edge list.
pub fn naive_step(n: usize, edges: &[(usize, usize)], k: &[u32], a: u64) -> u64 {
    let mut count = vec![0u32; n];
    for &(u, v) in edges {
        count[u] += (a >> v & 1) as u32;
        count[v] += (a >> u & 1) as u32;
    }
    (0..n)
        .filter(|&i| count[i] >= k[i])
        .fold(0, |acc, i| acc | 1 << i)
}

/// (transient, period) by plain iteration with a visited list.
pub fn naive_orbit(step: impl Fn(u64) -> u64, start: u64) -> (usize, usize) {
    let mut seen = vec![start];
    loop {
        let next = step(*seen.last().unwrap());
        if let Some(pos) = seen.iter().position(|&s| s == next) {
            return (pos, seen.len() - pos);
        }
        seen.push(next);
    }
}

pub fn naive_fixed_points(g: &Graph, k: &ThresholdDist) -> u64 {
    let n = g.n();
    (0..1u64 << n)
        .filter(|&a| naive_step(n, g.edges(), k.as_slice(), a) == a)
        .count() as u64
}

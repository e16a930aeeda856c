//! Graphs, threshold and type distributions, action profiles.

mod dist;
mod profile;

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

pub use dist::{
    is_valid_node, types_to_thresholds, Rational, ThresholdDist, ThresholdInstance, TypeDist,
};
pub use profile::ActionProfile;

use crate::{Error, Result};

/// Simple undirected graph on nodes `0..n`.
///
/// Graphs built with [`Graph::new`] are connected. Expansion outputs that are
/// legitimately disconnected (the bipartite double cover of a bipartite graph,
/// for instance) go through [`Graph::with_components`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let g = Self::with_components(n, edges)?;
        if let Some(node) = g.first_unreachable() {
            return Err(Error::Disconnected { node });
        }
        Ok(g)
    }

    /// Like [`Graph::new`] without the connectivity requirement.
    pub fn with_components(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut canon = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            for node in [u, v] {
                if node >= n {
                    return Err(Error::NodeOutOfRange { node, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop { node: u });
            }
            canon.push((u.min(v), u.max(v)));
        }
        canon.sort_unstable();
        if let Some(w) = canon.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge {
                u: w[0].0,
                v: w[0].1,
            });
        }
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in &canon {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Self {
            adjacency,
            edges: canon,
        })
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Canonical edge list: pairs `(i, j)` with `i < j`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adjacency[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adjacency[i].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn is_connected(&self) -> bool {
        self.first_unreachable().is_none()
    }

    fn first_unreachable(&self) -> Option<usize> {
        let mut seen = vec![false; self.n()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &v in &self.adjacency[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen.iter().position(|s| !s)
    }

    /// Connected components, each sorted; components ordered by smallest node.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.n()];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for s in 0..self.n() {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut head = 0;
            while head < members.len() {
                let u = members[head];
                head += 1;
                for &v in &self.adjacency[u] {
                    if comp[v] == usize::MAX {
                        comp[v] = id;
                        members.push(v);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_bipartite(&self) -> bool {
        two_partition(self).is_ok()
    }
}

/// Build a connected graph; see [`Graph::new`].
pub fn build_graph(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
    Graph::new(n, edges)
}

/// Bipartition of a bipartite graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoPartition {
    pub p_odd: Vec<usize>,
    pub p_even: Vec<usize>,
}

impl TwoPartition {
    /// Membership mask of `p_even`.
    pub fn even_mask(&self, n: usize) -> Vec<bool> {
        let mut m = vec![false; n];
        for &i in &self.p_even {
            m[i] = true;
        }
        m
    }
}

/// Breadth-first 2-colouring. `p_even` holds nodes at even distance from the
/// smallest node of their component (node 0 for connected graphs).
pub fn two_partition(g: &Graph) -> Result<TwoPartition> {
    let n = g.n();
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    for s in 0..n {
        if dist[s] != usize::MAX {
            continue;
        }
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &v in g.neighbors(u) {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    parent[v] = u;
                    queue.push_back(v);
                } else if dist[v] % 2 == dist[u] % 2 {
                    return Err(Error::NotBipartite {
                        witness: odd_cycle(&parent, &dist, u, v),
                    });
                }
            }
        }
    }
    let (p_even, p_odd) = (0..n).partition(|&i| dist[i] % 2 == 0);
    Ok(TwoPartition { p_odd, p_even })
}

// Walks both endpoints of a monochromatic edge up the BFS tree to their
// common ancestor.
fn odd_cycle(parent: &[usize], dist: &[usize], u: usize, v: usize) -> Vec<usize> {
    let (mut a, mut b) = (u, v);
    let mut up_a = vec![a];
    let mut up_b = vec![b];
    while dist[a] > dist[b] {
        a = parent[a];
        up_a.push(a);
    }
    while dist[b] > dist[a] {
        b = parent[b];
        up_b.push(b);
    }
    while a != b {
        a = parent[a];
        b = parent[b];
        up_a.push(a);
        up_b.push(b);
    }
    up_b.pop();
    up_a.reverse();
    up_a.extend(up_b);
    up_a
}

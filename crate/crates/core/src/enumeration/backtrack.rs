use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{Graph, ThresholdDist};
use crate::{Error, Result};

/// Number of fixed points of the threshold map, by depth-first assignment.
pub fn count_fixed_points_backtracking(g: &Graph, k: &ThresholdDist) -> Result<u64> {
    count_fixed_points_with_abort(g, k, &mut || false)
}

/// As [`count_fixed_points_backtracking`], polling `abort` every few thousand
/// search nodes; a `true` answer ends the search with [`Error::Timeout`].
pub fn count_fixed_points_with_abort(
    g: &Graph,
    k: &ThresholdDist,
    abort: &mut dyn FnMut() -> bool,
) -> Result<u64> {
    k.check_len(g.n())?;
    let mut s = Search::new(g, k);
    s.run(0, abort)?;
    Ok(s.count)
}

const UNSET: u8 = 2;

struct Search<'a> {
    g: &'a Graph,
    k: &'a [u32],
    order: Vec<usize>,
    value: Vec<u8>,
    black: Vec<usize>,
    unset: Vec<usize>,
    count: u64,
    visits: u64,
}

impl<'a> Search<'a> {
    fn new(g: &'a Graph, k: &'a ThresholdDist) -> Self {
        // BFS order keeps neighbourhoods contiguous so constraints close early.
        let mut order = Vec::with_capacity(g.n());
        let mut seen = vec![false; g.n()];
        for s in 0..g.n() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut q = VecDeque::from([s]);
            while let Some(u) = q.pop_front() {
                order.push(u);
                for &v in g.neighbors(u) {
                    if !seen[v] {
                        seen[v] = true;
                        q.push_back(v);
                    }
                }
            }
        }
        Self {
            g,
            k: k.as_slice(),
            order,
            value: vec![UNSET; g.n()],
            black: vec![0; g.n()],
            unset: g.degrees(),
            count: 0,
            visits: 0,
        }
    }

    // Assigned node `i` can still satisfy `value == [black >= k]`.
    fn consistent(&self, i: usize) -> bool {
        let k = self.k[i] as usize;
        match self.value[i] {
            1 => self.black[i] + self.unset[i] >= k,
            0 => self.black[i] < k,
            _ => true,
        }
    }

    fn run(&mut self, depth: usize, abort: &mut dyn FnMut() -> bool) -> Result<()> {
        self.visits += 1;
        if self.visits % 4096 == 0 && abort() {
            return Err(Error::Timeout);
        }
        if depth == self.order.len() {
            self.count += 1;
            return Ok(());
        }
        let v = self.order[depth];
        for val in [0u8, 1] {
            self.value[v] = val;
            if !self.consistent(v) {
                continue;
            }
            for idx in 0..self.g.degree(v) {
                let j = self.g.neighbors(v)[idx];
                self.unset[j] -= 1;
                self.black[j] += val as usize;
            }
            let ok = self.g.neighbors(v).iter().all(|&j| self.consistent(j));
            if ok {
                self.run(depth + 1, abort)?;
            }
            for idx in 0..self.g.degree(v) {
                let j = self.g.neighbors(v)[idx];
                self.unset[j] += 1;
                self.black[j] -= val as usize;
            }
        }
        self.value[v] = UNSET;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_has_two_fixed_points() {
        let g = Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(
            count_fixed_points_backtracking(&g, &ThresholdDist::uniform(4, 1)).unwrap(),
            2
        );
    }

    #[test]
    fn pinned_nodes() {
        let g = Graph::new(2, &[(0, 1)]).unwrap();
        // node 0 always B, node 1 never B
        assert_eq!(
            count_fixed_points_backtracking(&g, &ThresholdDist::new(vec![0, 2])).unwrap(),
            1
        );
    }

    #[test]
    fn abort_is_honoured() {
        let edges: Vec<_> = (0..30).map(|i| (i, (i + 1) % 30)).collect();
        let g = Graph::new(30, &edges).unwrap();
        let k = ThresholdDist::new((0..30).map(|i| if i % 3 == 2 { 2 } else { 1 }).collect());
        let r = count_fixed_points_with_abort(&g, &k, &mut || true);
        assert_eq!(r, Err(Error::Timeout));
        assert!(count_fixed_points_backtracking(&g, &k).unwrap() >= 1 << 10);
    }
}

use alloc::vec::Vec;
use core::fmt;

use crate::graph::{Graph, ThresholdDist};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Action {
    W,
    B,
}

impl Action {
    pub fn is_black(self) -> bool {
        self == Action::B
    }
}

impl From<bool> for Action {
    fn from(black: bool) -> Self {
        if black {
            Action::B
        } else {
            Action::W
        }
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.is_black() { "B" } else { "W" })
    }
}

/// Subset of `{B, W}`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct ActionSet {
    pub black: bool,
    pub white: bool,
}

impl ActionSet {
    pub fn contains(&self, a: Action) -> bool {
        if a.is_black() {
            self.black
        } else {
            self.white
        }
    }

    pub fn is_empty(&self) -> bool {
        !self.black && !self.white
    }

    pub fn to_vec(&self) -> Vec<Action> {
        [Action::B, Action::W]
            .into_iter()
            .filter(|&a| self.contains(a))
            .collect()
    }
}

const LOCAL_GUARD_BITS: usize = 22;

/// Actions `c` such that node `i`, once playing `c`, plays `c` again two steps
/// later whatever its radius-2 neighbourhood does.
pub fn strong_assignments(g: &Graph, k: &ThresholdDist, i: usize) -> Result<ActionSet> {
    k.check_len(g.n())?;
    if i >= g.n() {
        return Err(Error::NodeOutOfRange { node: i, n: g.n() });
    }
    // Local index 0 is node i; the rest is N(N(i)) without i.
    let mut local: Vec<usize> = Vec::new();
    for &j in g.neighbors(i) {
        for &l in g.neighbors(j) {
            if l != i {
                local.push(l);
            }
        }
        local.push(j);
    }
    local.sort_unstable();
    local.dedup();
    if local.len() > LOCAL_GUARD_BITS {
        return Err(Error::GuardExceeded {
            what: "radius-2 neighbourhood size",
            limit: LOCAL_GUARD_BITS as u64,
        });
    }
    let bit = |node: usize| -> u32 {
        if node == i {
            1
        } else {
            2 << local.binary_search(&node).expect("node in local set")
        }
    };
    let middle: Vec<(u32, u32)> = g
        .neighbors(i)
        .iter()
        .map(|&j| (g.neighbors(j).iter().fold(0u32, |m, &l| m | bit(l)), k[j]))
        .collect();
    let ki = k[i] as usize;
    let mut out = ActionSet {
        black: true,
        white: true,
    };
    for free in 0u32..(1 << local.len()) {
        for own in [0u32, 1] {
            let a = free << 1 | own;
            let count = middle
                .iter()
                .filter(|&&(m, kj)| (a & m).count_ones() >= kj)
                .count();
            if (count >= ki) != (own == 1) {
                if own == 1 {
                    out.black = false;
                } else {
                    out.white = false;
                }
            }
        }
        if out.is_empty() {
            break;
        }
    }
    Ok(out)
}

/// The eight two-step rules of a node on a cycle graph, named by the gates of
/// predecessor, node and successor (`∨` for threshold 1, `∧` for 2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CycleCase {
    C1,
    C2,
    C3,
    C4,
    C5,
    C6,
    C7,
    C8,
}

/// Row of the two-step table for thresholds `(k_p, k_i, k_s)`, each 1 or 2.
pub fn two_step_case(k_p: u32, k_i: u32, k_s: u32) -> Result<CycleCase> {
    let or = |k: u32| match k {
        1 => Ok(true),
        2 => Ok(false),
        _ => Err(Error::BadParameter(alloc::format!(
            "cycle threshold {k} is not 1 or 2"
        ))),
    };
    Ok(match (or(k_p)?, or(k_i)?, or(k_s)?) {
        (true, true, true) => CycleCase::C1,
        (true, true, false) => CycleCase::C2,
        (true, false, true) => CycleCase::C3,
        (true, false, false) => CycleCase::C4,
        (false, true, true) => CycleCase::C5,
        (false, true, false) => CycleCase::C6,
        (false, false, true) => CycleCase::C7,
        (false, false, false) => CycleCase::C8,
    })
}

impl CycleCase {
    /// Action of the node two steps later, from its own action and those of
    /// the nodes two hops back (`pp`) and two hops ahead (`ss`).
    pub fn evaluate(self, a_pp: bool, a_i: bool, a_ss: bool) -> bool {
        match self {
            CycleCase::C1 => a_i || a_ss || a_pp,
            CycleCase::C2 => a_i || a_pp,
            CycleCase::C3 => a_i || (a_ss && a_pp),
            CycleCase::C4 => a_i && a_ss,
            CycleCase::C5 => a_i || a_ss,
            CycleCase::C6 => a_i && (a_ss || a_pp),
            CycleCase::C7 => a_i && a_pp,
            CycleCase::C8 => a_i && a_ss && a_pp,
        }
    }

    pub fn strong_action(self) -> Action {
        match self {
            CycleCase::C1 | CycleCase::C2 | CycleCase::C3 | CycleCase::C5 => Action::B,
            _ => Action::W,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, &edges).unwrap()
    }

    #[test]
    fn ring_of_ors_has_black_strong() {
        let g = cycle(6);
        let s = strong_assignments(&g, &ThresholdDist::uniform(6, 1), 2).unwrap();
        assert!(s.black);
        assert!(!s.white);
    }

    #[test]
    fn spider_center_has_both() {
        let g = Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let k = ThresholdDist::new(vec![2, 1, 1, 1]);
        let s = strong_assignments(&g, &k, 0).unwrap();
        assert_eq!(s.to_vec(), vec![Action::B, Action::W]);
    }

    #[test]
    fn pinned_nodes() {
        let g = cycle(4);
        let k = ThresholdDist::new(vec![0, 1, 1, 1]);
        let s = strong_assignments(&g, &k, 0).unwrap();
        assert!(s.black && !s.white);
    }
}

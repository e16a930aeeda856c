use alloc::vec::Vec;
use core::hash::Hash;

use hashbrown::hash_map::Entry;
use hashbrown::HashMap;

use crate::graph::{ActionProfile, Graph};
use crate::{Error, Result};

/// Where a trajectory ends up.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LimitReport<S = ActionProfile> {
    /// Steps before the first state of the cycle.
    pub transient: usize,
    /// The limit cycle in visiting order; `step(cycle.last()) == cycle[0]`.
    pub cycle: Vec<S>,
    /// Distinct states visited, transient and cycle included.
    pub trajectory_length: usize,
}

impl<S> LimitReport<S> {
    pub fn period(&self) -> usize {
        self.cycle.len()
    }
}

/// `10 * (14|E| + 6n) + 4` distinct states.
pub fn default_guard(g: &Graph) -> usize {
    10 * (14 * g.edge_count() + 6 * g.n()) + 4
}

/// Iterate `step` from `start`, recording first-visit times, until a state
/// repeats. Fails once more than `guard` distinct states have been seen.
pub fn limit_cycle<S, F>(mut step: F, start: S, guard: usize) -> Result<LimitReport<S>>
where
    S: Clone + Eq + Hash,
    F: FnMut(&S) -> S,
{
    let mut seen: HashMap<S, usize> = HashMap::new();
    let mut trajectory = Vec::new();
    let mut x = start;
    loop {
        let t = trajectory.len();
        match seen.entry(x.clone()) {
            Entry::Occupied(e) => {
                let s = *e.get();
                let cycle = trajectory.split_off(s);
                return Ok(LimitReport {
                    transient: s,
                    cycle,
                    trajectory_length: t,
                });
            }
            Entry::Vacant(e) => {
                if t >= guard {
                    return Err(Error::GuardExceeded {
                        what: "trajectory length",
                        limit: guard as u64,
                    });
                }
                e.insert(t);
            }
        }
        let next = step(&x);
        trajectory.push(x);
        x = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::step;
    use crate::graph::ThresholdDist;
    use alloc::vec;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, &edges).unwrap()
    }

    fn p(s: &str) -> ActionProfile {
        s.parse().unwrap()
    }

    #[test]
    fn triangle_converges_to_all_black() {
        let g = cycle(3);
        let k = ThresholdDist::uniform(3, 1);
        let r = limit_cycle(|a| step(&g, &k, a).unwrap(), p("BWW"), default_guard(&g)).unwrap();
        assert_eq!(
            (r.transient, r.cycle.clone(), r.trajectory_length),
            (2, vec![p("BBB")], 3)
        );
    }

    #[test]
    fn alternating_square_is_a_two_cycle() {
        let g = cycle(4);
        let k = ThresholdDist::uniform(4, 1);
        let r = limit_cycle(|a| step(&g, &k, a).unwrap(), p("BWBW"), 100).unwrap();
        assert_eq!(r.transient, 0);
        assert_eq!(r.cycle, vec![p("BWBW"), p("WBWB")]);
    }

    #[test]
    fn fixed_point_and_guard() {
        let r = limit_cycle(|x: &u32| *x, 7, 1).unwrap();
        assert_eq!((r.transient, r.period()), (0, 1));
        let e = limit_cycle(|x: &u32| (x + 1) % 10, 0, 5).unwrap_err();
        assert_eq!(
            e,
            Error::GuardExceeded {
                what: "trajectory length",
                limit: 5
            }
        );
        let r = limit_cycle(|x: &u32| if *x < 4 { x + 1 } else { 2 }, 0, 10).unwrap();
        assert_eq!((r.transient, r.cycle), (2, vec![2, 3, 4]));
    }
}

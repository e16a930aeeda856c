use alloc::vec::Vec;

use crate::dynamics::{BitStep, MaskRule};
use crate::enumeration::census::check_guard;
use crate::graph::{ActionProfile, Graph, ThresholdDist};
use crate::Result;

fn prepare(
    g: &Graph,
    k: &ThresholdDist,
    a: &ActionProfile,
    guard_n: usize,
) -> Result<(MaskRule, u64)> {
    check_guard(g.n(), guard_n)?;
    a.check_len(g.n())?;
    Ok((MaskRule::new(g, k)?, a.to_bits()))
}

/// Every `b` with `step(b) = a`, ascending.
pub fn predecessors(
    g: &Graph,
    k: &ThresholdDist,
    a: &ActionProfile,
    guard_n: usize,
) -> Result<Vec<ActionProfile>> {
    let (rule, target) = prepare(g, k, a, guard_n)?;
    Ok((0..1u64 << g.n())
        .filter(|&b| rule.step_bits(b) == target)
        .map(|b| ActionProfile::from_bits(g.n(), b))
        .collect())
}

/// Number of predecessors of `a`.
pub fn count_predecessors(
    g: &Graph,
    k: &ThresholdDist,
    a: &ActionProfile,
    guard_n: usize,
) -> Result<u64> {
    let (rule, target) = prepare(g, k, a, guard_n)?;
    Ok(count_predecessors_in(&rule, target, 0..1u64 << g.n()))
}

/// Predecessor count of `target` among the profiles in `range`.
pub fn count_predecessors_in<B: BitStep>(
    rule: &B,
    target: u64,
    range: core::ops::Range<u64>,
) -> u64 {
    range.filter(|&b| rule.step_bits(b) == target).count() as u64
}

/// Whether `a` has at least one predecessor.
pub fn is_reachable(
    g: &Graph,
    k: &ThresholdDist,
    a: &ActionProfile,
    guard_n: usize,
) -> Result<bool> {
    let (rule, target) = prepare(g, k, a, guard_n)?;
    Ok((0..1u64 << g.n()).any(|b| rule.step_bits(b) == target))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::DEFAULT_GUARD_N;
    use alloc::vec;

    fn p(s: &str) -> ActionProfile {
        s.parse().unwrap()
    }

    #[test]
    fn square_all_black_predecessors() {
        let edges = [(0, 1), (1, 2), (2, 3), (3, 0)];
        let g = Graph::new(4, &edges).unwrap();
        let k = ThresholdDist::uniform(4, 1);
        let preds = predecessors(&g, &k, &p("BBBB"), DEFAULT_GUARD_N).unwrap();
        // every node needs a black neighbour: {0,2} and {1,3} each hold a B
        assert_eq!(preds.len(), 9);
        assert!(preds.contains(&p("BBBB")));
        assert!(predecessors(&g, &k, &p("BWWW"), DEFAULT_GUARD_N)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn pinned_leaves_are_unreachable() {
        let g = Graph::new(3, &[(0, 1), (0, 2)]).unwrap();
        let k = ThresholdDist::new(vec![1, 2, 2]);
        assert!(!is_reachable(&g, &k, &p("WBW"), DEFAULT_GUARD_N).unwrap());
        assert!(is_reachable(&g, &k, &p("WWW"), DEFAULT_GUARD_N).unwrap());
        assert_eq!(
            count_predecessors(&g, &k, &p("WWW"), DEFAULT_GUARD_N).unwrap(),
            2
        );
    }
}

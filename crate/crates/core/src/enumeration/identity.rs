use alloc::collections::BTreeSet;
use alloc::format;

use super::{census_range, count_fixed_points_backtracking, DEFAULT_GUARD_N};
use crate::dynamics::{BitStep, MaskRule};
use crate::enumeration::census::check_guard;
use crate::graph::{two_partition, ActionProfile, Graph, ThresholdDist};
use crate::{Error, Result};

/// Outcome of checking `|cycles| = F(F-1)/2 + F` on a bipartite instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityRecord {
    /// From the backtracking counter.
    pub fixed_points: u64,
    /// From the exhaustive census.
    pub two_cycles: u64,
    pub cycle_classes: u64,
    pub predicted: u64,
    /// Whether every 2-cycle was matched against a pair of fixed points.
    pub pairing_checked: bool,
}

/// Largest number of 2-cycles for which the pairing is checked explicitly.
pub const PAIRING_LIMIT: u64 = 1 << 16;

/// On a bipartite graph every 2-cycle splices two distinct fixed points, one
/// side from each. Counts both independently and checks the identity and,
/// when small enough, the splice itself.
pub fn bipartite_cycle_identity(g: &Graph, k: &ThresholdDist) -> Result<IdentityRecord> {
    let parts = two_partition(g)?;
    check_guard(g.n(), DEFAULT_GUARD_N)?;
    let f = count_fixed_points_backtracking(g, k)?;
    let predicted = f * f.saturating_sub(1) / 2 + f;
    let rule = MaskRule::new(g, k)?;
    let pairing = predicted - f <= PAIRING_LIMIT;
    let cap = if pairing { usize::MAX } else { 0 };
    let census = census_range(&rule, 0..1u64 << g.n(), cap)?;
    let violated = |detail: alloc::string::String| Err(Error::IdentityViolated { detail });
    if census.fixed_points != f {
        return violated(format!(
            "census found {} fixed points, backtracking {f}",
            census.fixed_points
        ));
    }
    if census.cycle_classes() != predicted {
        return violated(format!(
            "{} cycle classes, predicted {predicted}",
            census.cycle_classes()
        ));
    }
    if pairing {
        let even: u64 = parts.p_even.iter().fold(0, |m, &i| m | 1 << i);
        let odd = !even & ((1u64 << g.n()) - 1);
        let fixed = &census.fixed_point_list;
        let mut spliced = BTreeSet::new();
        for (x, a1) in fixed.iter().enumerate() {
            for a2 in &fixed[x + 1..] {
                let (p, q) = (a1.to_bits(), a2.to_bits());
                let b1 = (q & odd) | (p & even);
                let b2 = (p & odd) | (q & even);
                if b1 == b2 || rule.step_bits(b1) != b2 || rule.step_bits(b2) != b1 {
                    return violated(format!("splice of {a1} and {a2} is not a 2-cycle"));
                }
                spliced.insert((b1.min(b2), b1.max(b2)));
            }
        }
        let listed: BTreeSet<_> = census
            .two_cycle_list
            .iter()
            .map(|(a, b)| (a.to_bits(), b.to_bits()))
            .collect();
        if spliced != listed {
            let missing = listed
                .difference(&spliced)
                .next()
                .map(|&(a, _)| ActionProfile::from_bits(g.n(), a));
            return violated(format!(
                "2-cycle through {missing:?} is not a splice of fixed points"
            ));
        }
    }
    Ok(IdentityRecord {
        fixed_points: f,
        two_cycles: census.two_cycles,
        cycle_classes: census.cycle_classes(),
        predicted,
        pairing_checked: pairing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn square() {
        let g = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let r = bipartite_cycle_identity(&g, &ThresholdDist::uniform(4, 1)).unwrap();
        assert_eq!((r.fixed_points, r.cycle_classes, r.predicted), (2, 3, 3));
        assert!(r.pairing_checked);
    }

    #[test]
    fn path() {
        let g = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let r = bipartite_cycle_identity(&g, &ThresholdDist::new(vec![1, 1, 1])).unwrap();
        assert_eq!(r.cycle_classes, r.predicted);
    }

    #[test]
    fn rejects_odd_cycles() {
        let g = Graph::new(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let e = bipartite_cycle_identity(&g, &ThresholdDist::uniform(3, 1)).unwrap_err();
        assert!(matches!(e, Error::NotBipartite { .. }));
    }
}

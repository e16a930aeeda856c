use alloc::vec::Vec;
use core::ops::Range;

use crate::dynamics::{limit_cycle, BitStep, MaskRule};
use crate::graph::{ActionProfile, Graph, ThresholdDist};
use crate::{Error, Result};

pub const DEFAULT_GUARD_N: usize = 24;
pub const DEFAULT_WITNESS_CAP: usize = 1024;

/// Fixed points and 2-cycles of a map over the whole profile space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LimitCensus {
    pub n: usize,
    pub fixed_points: u64,
    pub two_cycles: u64,
    /// Smallest fixed points, at most `witness_cap` of them.
    pub fixed_point_list: Vec<ActionProfile>,
    /// Smallest 2-cycles as `(a, b)` with `a < b`, at most `witness_cap`.
    pub two_cycle_list: Vec<(ActionProfile, ActionProfile)>,
    pub witness_cap: usize,
}

impl LimitCensus {
    pub fn empty(n: usize, witness_cap: usize) -> Self {
        Self {
            n,
            fixed_points: 0,
            two_cycles: 0,
            fixed_point_list: Vec::new(),
            two_cycle_list: Vec::new(),
            witness_cap,
        }
    }

    pub fn cycle_classes(&self) -> u64 {
        self.fixed_points + self.two_cycles
    }

    pub fn lists_complete(&self) -> bool {
        self.fixed_point_list.len() as u64 == self.fixed_points
            && self.two_cycle_list.len() as u64 == self.two_cycles
    }

    /// Combine censuses of disjoint ranges. Associative and commutative.
    pub fn merge(mut self, other: Self) -> Self {
        self.fixed_points += other.fixed_points;
        self.two_cycles += other.two_cycles;
        self.fixed_point_list.extend(other.fixed_point_list);
        self.fixed_point_list.sort_unstable();
        self.fixed_point_list.truncate(self.witness_cap);
        self.two_cycle_list.extend(other.two_cycle_list);
        self.two_cycle_list.sort_unstable();
        self.two_cycle_list.truncate(self.witness_cap);
        self
    }
}

pub(crate) fn check_guard(n: usize, guard_n: usize) -> Result<()> {
    if n > guard_n || n > 63 {
        Err(Error::GuardExceeded {
            what: "nodes for exhaustive scan",
            limit: guard_n.min(63) as u64,
        })
    } else {
        Ok(())
    }
}

/// Census of `rule` over all `2^n` profiles.
pub fn enumerate_limits(g: &Graph, k: &ThresholdDist, guard_n: usize) -> Result<LimitCensus> {
    check_guard(g.n(), guard_n)?;
    let rule = MaskRule::new(g, k)?;
    census_range(&rule, 0..1u64 << g.n(), DEFAULT_WITNESS_CAP)
}

/// Census restricted to the profiles whose integer value lies in `range`.
///
/// Fixed points are counted where they lie and 2-cycles at their smaller
/// profile, so censuses of a partition of `0..2^n` merge into the full one.
/// Every profile in the range is also checked to end in a cycle of length at
/// most 2; the first counterexample is returned as [`Error::LongCycle`].
pub fn census_range<B: BitStep>(
    rule: &B,
    range: Range<u64>,
    witness_cap: usize,
) -> Result<LimitCensus> {
    let n = rule.n();
    check_guard(n, 63)?;
    let mut c = LimitCensus::empty(n, witness_cap);
    let profile = |bits| ActionProfile::from_bits(n, bits);
    for a in range {
        let b = rule.step_bits(a);
        if b == a {
            c.fixed_points += 1;
            if c.fixed_point_list.len() < witness_cap {
                c.fixed_point_list.push(profile(a));
            }
            continue;
        }
        if rule.step_bits(b) == a {
            if a < b {
                c.two_cycles += 1;
                if c.two_cycle_list.len() < witness_cap {
                    c.two_cycle_list.push((profile(a), profile(b)));
                }
            }
            continue;
        }
        verify_short_limit(rule, a)?;
    }
    Ok(c)
}

const WALK_LIMIT: usize = 4096;

// Walks forward until a state of period <= 2 or a smaller start profile is
// met. Smaller profiles are checked by the same scan, so by induction on the
// profile order every trajectory is covered once the whole space is scanned.
fn verify_short_limit<B: BitStep>(rule: &B, a: u64) -> Result<()> {
    let mut x = a;
    for _ in 0..WALK_LIMIT {
        let y = rule.step_bits(x);
        if y == x || rule.step_bits(y) == x {
            return Ok(());
        }
        if y < a {
            return Ok(());
        }
        x = y;
    }
    let n = rule.n();
    let r = limit_cycle(|s: &u64| rule.step_bits(*s), a, (1usize << n.min(40)) + 1)?;
    if r.period() <= 2 {
        return Ok(());
    }
    Err(Error::LongCycle {
        period: r.period(),
        witness: alloc::format!("{}", ActionProfile::from_bits(n, r.cycle[0])),
    })
}

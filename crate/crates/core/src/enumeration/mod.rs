//! Exhaustive and backtracking enumeration of limit structure.

mod backtrack;
mod census;
mod extremal;
mod identity;
mod preds;
mod state_space;

pub use backtrack::{count_fixed_points_backtracking, count_fixed_points_with_abort};
pub use census::{
    census_range, enumerate_limits, LimitCensus, DEFAULT_GUARD_N, DEFAULT_WITNESS_CAP,
};
pub use extremal::{build_extremal_cycle_instance, ExtremalKind};
pub use identity::{bipartite_cycle_identity, IdentityRecord, PAIRING_LIMIT};
pub use preds::{count_predecessors, count_predecessors_in, is_reachable, predecessors};
pub use state_space::StateSpace;

/// Fails unless `n` is small enough for a full `2^n` scan under `guard_n`.
pub fn check_scan_guard(n: usize, guard_n: usize) -> crate::Result<()> {
    census::check_guard(n, guard_n)
}

//! Sharded scans. Results never depend on the number of workers.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::thread;

use threshold_core::dynamics::BitStep;
use threshold_core::enumeration::{census_range, check_scan_guard, LimitCensus};
use threshold_core::resilience::{ResilienceResult, ResilienceSearch};
use threshold_core::{Graph, Result};

pub fn default_workers() -> usize {
    thread::available_parallelism().map_or(1, |n| n.get())
}

/// Run `job` on every item, at most `workers` at a time, and return the
/// results in item order.
pub fn map_ordered<T, R, F>(items: &[T], workers: usize, job: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync,
{
    let next = AtomicUsize::new(0);
    let slots: Vec<Mutex<Option<R>>> = items.iter().map(|_| Mutex::new(None)).collect();
    thread::scope(|s| {
        for _ in 0..workers.clamp(1, items.len().max(1)) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(item) = items.get(i) else { break };
                *slots[i].lock().unwrap() = Some(job(item));
            });
        }
    });
    slots
        .into_iter()
        .map(|m| m.into_inner().unwrap().expect("every item processed"))
        .collect()
}

/// Census of `rule` over all `2^n` profiles split into contiguous shards.
pub fn census<B: BitStep + Sync>(
    rule: &B,
    guard_n: usize,
    workers: usize,
    witness_cap: usize,
) -> Result<LimitCensus> {
    let n = rule.n();
    check_scan_guard(n, guard_n)?;
    let total = 1u64 << n;
    let shards = (workers as u64 * 4).clamp(1, total);
    let bounds: Vec<(u64, u64)> = (0..shards)
        .map(|s| (total * s / shards, total * (s + 1) / shards))
        .collect();
    let parts = map_ordered(&bounds, workers, |&(lo, hi)| {
        census_range(rule, lo..hi, witness_cap)
    });
    let mut acc = LimitCensus::empty(n, witness_cap);
    for part in parts {
        acc = acc.merge(part?);
    }
    Ok(acc)
}

/// Brute-force resilience with each cost level split by the allocation of
/// the first nodes. `evaluations` counts the checks a sequential search
/// would have made.
pub fn resilience(g: &Graph, budget: usize, workers: usize) -> Result<ResilienceResult> {
    let search = ResilienceSearch::new(g, budget)?;
    let depth = g.n().min(3);
    let mut evaluations = 0;
    for level in search.levels() {
        let prefixes = search.prefixes(level, depth);
        // Index of the first prefix known to succeed; later ones are skipped.
        let best = AtomicUsize::new(usize::MAX);
        let indexed: Vec<usize> = (0..prefixes.len()).collect();
        let outcomes = map_ordered(&indexed, workers, |&i| {
            if i > best.load(Ordering::Relaxed) {
                return None;
            }
            let (found, spent) = search.search_prefix(level, &prefixes[i]);
            if found.is_some() {
                best.fetch_min(i, Ordering::Relaxed);
            }
            Some((found, spent))
        });
        for outcome in outcomes {
            let (found, spent) = outcome.expect("prefixes before the first success all run");
            evaluations += spent;
            if let Some(alloc) = found {
                return Ok(search.result(level, &alloc, evaluations));
            }
        }
    }
    unreachable!("the all-ones allocation recovers every graph")
}

#[cfg(test)]
mod tests {
    use super::*;
    use threshold_core::dynamics::MaskRule;
    use threshold_core::enumeration::enumerate_limits;
    use threshold_core::resilience::{resilience_bruteforce, Family};
    use threshold_core::ThresholdDist;

    #[test]
    fn census_independent_of_workers() {
        let g = Family::Cycle.graph(10).unwrap();
        let k = ThresholdDist::new((0..10).map(|i| 1 + (i % 3 == 0) as u32).collect());
        let rule = MaskRule::new(&g, &k).unwrap();
        let one = census(&rule, 24, 1, 5).unwrap();
        let many = census(&rule, 24, 7, 5).unwrap();
        assert_eq!(one, many);
        let reference = enumerate_limits(&g, &k, 24).unwrap();
        assert_eq!(
            (one.fixed_points, one.two_cycles),
            (reference.fixed_points, reference.two_cycles)
        );
    }

    #[test]
    fn resilience_independent_of_workers() {
        for (family, n, k) in [
            (Family::Complete, 5, 2),
            (Family::Path, 6, 1),
            (Family::Cycle, 6, 3),
        ] {
            let g = family.graph(n).unwrap();
            let seq = resilience_bruteforce(&g, k).unwrap();
            assert_eq!(resilience(&g, k, 1).unwrap(), seq);
            assert_eq!(resilience(&g, k, 5).unwrap(), seq);
        }
    }
}

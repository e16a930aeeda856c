use alloc::format;
use alloc::vec::Vec;

use crate::graph::{Graph, ThresholdDist};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExtremalKind {
    /// Odd cycle, every threshold 1: exactly two convergence cycles.
    Min,
    /// Cycle whose thresholds repeat `(1, 1, 2)`: exponentially many.
    Max,
}

/// The cycle-graph instances attaining the smallest and the exponentially
/// large number of convergence cycles.
pub fn build_extremal_cycle_instance(
    n: usize,
    kind: ExtremalKind,
) -> Result<(Graph, ThresholdDist)> {
    let k: Vec<u32> = match kind {
        ExtremalKind::Min if n >= 3 && n % 2 == 1 => alloc::vec![1; n],
        ExtremalKind::Min => {
            return Err(Error::BadParameter(format!(
                "min instance needs odd n >= 3, got {n}"
            )))
        }
        ExtremalKind::Max if n >= 3 && n % 3 == 0 => {
            (0..n).map(|i| if i % 3 == 2 { 2 } else { 1 }).collect()
        }
        ExtremalKind::Max => {
            return Err(Error::BadParameter(format!(
                "max instance needs n a positive multiple of 3, got {n}"
            )))
        }
    };
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Ok((Graph::new(n, &edges)?, ThresholdDist::new(k)))
}

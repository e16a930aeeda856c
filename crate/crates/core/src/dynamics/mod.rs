//! Update maps, limit-cycle detection and local structure of the dynamics.

mod limit;
mod mask;
mod strong;
mod weighted;

pub use limit::{default_guard, limit_cycle, LimitReport};
pub use mask::{BitStep, MaskRule, WeightedMaskRule};
pub use strong::{strong_assignments, two_step_case, Action, ActionSet, CycleCase};
pub use weighted::{step_weighted, weighted_types_to_thresholds, WeightedGraph};

use crate::graph::{ActionProfile, Graph, ThresholdDist, TypeDist};
use crate::{Error, Result};

#[inline]
pub(crate) fn black_neighbors(g: &Graph, a: &ActionProfile, i: usize) -> usize {
    g.neighbors(i).iter().filter(|&&j| a.get(j)).count()
}

pub(crate) fn step_raw(g: &Graph, k: &[u32], a: &ActionProfile) -> ActionProfile {
    let mut out = ActionProfile::all_white(g.n());
    for (i, &ki) in k.iter().enumerate() {
        if black_neighbors(g, a, i) >= ki as usize {
            out.set(i, true);
        }
    }
    out
}

/// Node `i` plays `B` iff at least `k_i` of its neighbours play `B`.
pub fn step(g: &Graph, k: &ThresholdDist, a: &ActionProfile) -> Result<ActionProfile> {
    k.check_len(g.n())?;
    a.check_len(g.n())?;
    Ok(step_raw(g, k.as_slice(), a))
}

/// Node `i` plays `B` iff strictly more than `q_i d_i` neighbours play `B`.
pub fn step_types(g: &Graph, q: &TypeDist, a: &ActionProfile) -> Result<ActionProfile> {
    q.check_len(g.n())?;
    a.check_len(g.n())?;
    let mut out = ActionProfile::all_white(g.n());
    for i in 0..g.n() {
        let count = black_neighbors(g, a, i) as i128;
        let (num, den) = (i128::from(*q[i].numer()), i128::from(*q[i].denom()));
        if count * den > num * g.degree(i) as i128 {
            out.set(i, true);
        }
    }
    Ok(out)
}

/// Updates only the nodes in `part`; everyone else keeps their action.
pub fn step_restricted(
    g: &Graph,
    k: &ThresholdDist,
    a: &ActionProfile,
    part: &[usize],
) -> Result<ActionProfile> {
    k.check_len(g.n())?;
    a.check_len(g.n())?;
    let mut out = a.clone();
    for &i in part {
        if i >= g.n() {
            return Err(Error::NodeOutOfRange { node: i, n: g.n() });
        }
        out.set(i, black_neighbors(g, a, i) >= k[i] as usize);
    }
    Ok(out)
}

/// Complement of [`step`]: `B` iff at most `k_i - 1` neighbours play `B`.
pub fn step_inverted(g: &Graph, k: &ThresholdDist, a: &ActionProfile) -> Result<ActionProfile> {
    Ok(step(g, k, a)?.complement())
}

/// Number of edges whose endpoints play different actions.
pub fn conflict_links(g: &Graph, a: &ActionProfile) -> Result<usize> {
    a.check_len(g.n())?;
    Ok(g.edges()
        .iter()
        .filter(|&&(u, v)| a.get(u) != a.get(v))
        .count())
}

/// Degrees and thresholds packed for repeated stepping of one instance.
#[derive(Debug, Clone)]
pub struct ThresholdMap<'a> {
    graph: &'a Graph,
    k: &'a ThresholdDist,
}

impl<'a> ThresholdMap<'a> {
    pub fn new(graph: &'a Graph, k: &'a ThresholdDist) -> Result<Self> {
        k.check_len(graph.n())?;
        Ok(Self { graph, k })
    }

    pub fn apply(&self, a: &ActionProfile) -> ActionProfile {
        step_raw(self.graph, self.k.as_slice(), a)
    }
}

/// `step` applied `t` times.
pub fn iterate(g: &Graph, k: &ThresholdDist, a: &ActionProfile, t: usize) -> Result<ActionProfile> {
    let mut x = a.clone();
    for _ in 0..t {
        x = step(g, k, &x)?;
    }
    Ok(x)
}

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{count_sat, Formula, GadgetInstance, GadgetLabel, Variant};
use crate::enumeration::count_predecessors;
use crate::graph::{ActionProfile, Graph, ThresholdDist, ThresholdInstance};
use crate::{Error, Result};

/// A gadget together with the profile whose predecessors encode the formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PredInstance {
    pub gadget: GadgetInstance,
    pub target: ActionProfile,
}

/// Instance in which `target` has a predecessor iff the 3-CNF formula is
/// satisfiable.
///
/// Node order: `v_p, v'_p, o_p, t_p` per variable, then one checker per
/// clause, then the hub `u`. Thresholds are 1 except on the `t` nodes (2);
/// the target is `B` except on the `t` nodes. Variables absent from every
/// clause still get their four nodes.
pub fn pred_reduction(f: &Formula) -> Result<PredInstance> {
    if f.variant() != Variant::Cnf3 {
        return Err(Error::InvalidFormula {
            detail: "expected a 3-CNF formula".into(),
        });
    }
    let n = f.num_vars();
    let m = f.clauses().len();
    let size = 4 * n + m + 1;
    let hub = 4 * n + m;
    let mut labels = Vec::with_capacity(size);
    let mut edges = Vec::new();
    for p in 0..n {
        let var = p + 1;
        labels.extend([
            GadgetLabel::V { var },
            GadgetLabel::VNeg { var },
            GadgetLabel::O { var },
            GadgetLabel::T { var },
        ]);
        let (v, vn, o, t) = (4 * p, 4 * p + 1, 4 * p + 2, 4 * p + 3);
        edges.extend([(o, v), (o, vn), (t, v), (t, vn), (hub, v), (hub, vn)]);
    }
    for (c, clause) in f.clauses().iter().enumerate() {
        labels.push(GadgetLabel::Clause { clause: c + 1 });
        let mut lits: Vec<usize> = clause
            .iter()
            .map(|l| 4 * l.var + usize::from(l.negated))
            .collect();
        lits.sort_unstable();
        lits.dedup();
        edges.extend(lits.into_iter().map(|lit| (4 * n + c, lit)));
    }
    labels.push(GadgetLabel::Hub);
    let graph = Graph::new(size, &edges)?;
    let is_t = |i: usize| i < 4 * n && i % 4 == 3;
    let k = ThresholdDist::new((0..size).map(|i| if is_t(i) { 2 } else { 1 }).collect());
    let target = ActionProfile::from_bools(&(0..size).map(|i| !is_t(i)).collect::<Vec<_>>());
    Ok(PredInstance {
        gadget: GadgetInstance {
            instance: ThresholdInstance::new(graph, k)?,
            labels,
        },
        target,
    })
}

/// The monotone-2CNF predecessor gadget with its claimed and measured counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReachablePred {
    pub gadget: GadgetInstance,
    /// All `B`.
    pub target: ActionProfile,
    /// Number of satisfying assignments, the count the construction is meant
    /// to reproduce.
    pub claimed: u64,
    /// Predecessors of `target`, by exhaustive scan.
    pub measured: u64,
}

impl ReachablePred {
    pub fn matches(&self) -> bool {
        self.claimed == self.measured
    }

    /// Human-readable notice when the measured count differs from the claim.
    pub fn discrepancy(&self) -> Option<String> {
        (!self.matches()).then(|| {
            format!(
                "predecessor count {} differs from the satisfying-assignment count {}: \
                 the u and d nodes are not forced to B",
                self.measured, self.claimed
            )
        })
    }
}

/// Nodes `v_1..v_n`, `u_1..u_m`, `d`; `u_c` is joined to the variables of
/// clause `c` and `d` to every variable; all thresholds 1; target all `B`.
/// Built as stated and measured by a `2^(n+m+1)` scan.
pub fn reachable_pred_reduction(f: &Formula, guard_n: usize) -> Result<ReachablePred> {
    if f.variant() != Variant::Monotone2Cnf {
        return Err(Error::InvalidFormula {
            detail: "expected a monotone 2-CNF formula".into(),
        });
    }
    let n = f.num_vars();
    let m = f.clauses().len();
    let size = n + m + 1;
    let d = n + m;
    let mut labels: Vec<GadgetLabel> = (1..=n).map(|var| GadgetLabel::V { var }).collect();
    labels.extend((1..=m).map(|clause| GadgetLabel::U { clause }));
    labels.push(GadgetLabel::Cover);
    let mut edges: Vec<(usize, usize)> = (0..n).map(|p| (d, p)).collect();
    for (c, clause) in f.clauses().iter().enumerate() {
        let mut vars: Vec<usize> = clause.iter().map(|l| l.var).collect();
        vars.sort_unstable();
        vars.dedup();
        edges.extend(vars.into_iter().map(|p| (n + c, p)));
    }
    let graph = Graph::new(size, &edges)?;
    let k = ThresholdDist::uniform(size, 1);
    let target = ActionProfile::all_black(size);
    let measured = count_predecessors(&graph, &k, &target, guard_n)?;
    Ok(ReachablePred {
        gadget: GadgetInstance {
            instance: ThresholdInstance::new(graph, k)?,
            labels,
        },
        target,
        claimed: count_sat(f)?,
        measured,
    })
}

/// Assignments of `(u_1..u_m, d)` under which every `v_p` has a `B`
/// neighbour. When `m >= 1` the measured predecessor count of
/// [`reachable_pred_reduction`] is `#sat * coverage_count`.
pub fn coverage_count(f: &Formula) -> Result<u64> {
    let n = f.num_vars();
    let m = f.clauses().len();
    if m + 1 > super::MAX_ORACLE_VARS {
        return Err(Error::GuardExceeded {
            what: "clauses for coverage count",
            limit: super::MAX_ORACLE_VARS as u64 - 1,
        });
    }
    let mut touching = alloc::vec![0u64; n];
    for (c, clause) in f.clauses().iter().enumerate() {
        for l in clause {
            touching[l.var] |= 1 << c;
        }
    }
    let d_bit = 1u64 << m;
    Ok((0..1u64 << (m + 1))
        .filter(|&x| touching.iter().all(|&t| x & (t | d_bit) != 0))
        .count() as u64)
}

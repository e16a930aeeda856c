use alloc::vec::Vec;

use super::{Formula, GadgetInstance, GadgetLabel, Variant};
use crate::graph::{Graph, ThresholdDist, ThresholdInstance};
use crate::{Error, Result};

/// Instance whose fixed-point count is `#sat + 8(#nsat - 1) + 1` for a
/// monotone 2-DNF formula.
///
/// Node order: the copies `s^1..s^3` of each variable, then per clause
/// `y^1..y^3, z^1..z^3`, then per clause `b^1..b^3`, then `d^1..d^3`.
/// Thresholds are 2 except on the `d` nodes (1). A single-literal clause `x`
/// is read as `x ∧ x`.
pub fn fix_reduction(f: &Formula) -> Result<GadgetInstance> {
    if f.variant() != Variant::Monotone2Dnf {
        return Err(Error::InvalidFormula {
            detail: "expected a monotone 2-DNF formula".into(),
        });
    }
    f.check_all_variables_used()?;
    let n = f.num_vars();
    let m = f.clauses().len();
    let s = |p: usize, l: usize| 3 * p + l;
    let y = |c: usize, l: usize| 3 * n + 6 * c + l;
    let z = |c: usize, l: usize| 3 * n + 6 * c + 3 + l;
    let b = |c: usize, l: usize| 3 * n + 6 * m + 3 * c + l;
    let d = |l: usize| 3 * n + 9 * m + l;
    let size = 3 * (n + 3 * m + 1);

    let mut labels = Vec::with_capacity(size);
    for p in 0..n {
        labels.extend((1..=3).map(|copy| GadgetLabel::S { var: p + 1, copy }));
    }
    for c in 0..m {
        labels.extend((1..=3).map(|copy| GadgetLabel::Y {
            clause: c + 1,
            copy,
        }));
        labels.extend((1..=3).map(|copy| GadgetLabel::Z {
            clause: c + 1,
            copy,
        }));
    }
    for c in 0..m {
        labels.extend((1..=3).map(|copy| GadgetLabel::B {
            clause: c + 1,
            copy,
        }));
    }
    labels.extend((1..=3).map(|copy| GadgetLabel::D { copy }));

    let mut edges = Vec::new();
    for (c, clause) in f.clauses().iter().enumerate() {
        let yp = clause[0].var;
        let zp = clause.get(1).map_or(yp, |l| l.var);
        for l in 0..3 {
            edges.extend([(b(c, l), y(c, l)), (b(c, l), z(c, l)), (d(l), b(c, l))]);
            for l2 in 0..3 {
                edges.push((s(yp, l), y(c, l2)));
                edges.push((s(zp, l), z(c, l2)));
            }
        }
    }
    let graph = Graph::new(size, &edges)?;
    let mut k = alloc::vec![2u32; size];
    for l in 0..3 {
        k[d(l)] = 1;
    }
    Ok(GadgetInstance {
        instance: ThresholdInstance::new(graph, ThresholdDist::new(k))?,
        labels,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SatCounts {
    pub sat: u64,
    pub nsat: u64,
}

/// Solve `sat + 8(nsat - 1) + 1 = F` and `sat + nsat = 2^n`.
pub fn recover_sat_count(fixed_points: u64, n: usize) -> Result<SatCounts> {
    let err = Error::InconsistentCount {
        fixed_points,
        vars: n,
    };
    if n >= 62 {
        return Err(err);
    }
    let total = 1i128 << n;
    let seven_nsat = i128::from(fixed_points) + 7 - total;
    if seven_nsat % 7 != 0 {
        return Err(err);
    }
    let nsat = seven_nsat / 7;
    if nsat < 1 || nsat > total {
        return Err(err);
    }
    Ok(SatCounts {
        sat: (total - nsat) as u64,
        nsat: nsat as u64,
    })
}

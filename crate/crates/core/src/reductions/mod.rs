//! Boolean formulas, brute-force model counting and the gadget instances
//! whose fixed points or predecessors encode satisfying assignments.

mod fix;
mod formula;
mod pred;

use alloc::vec::Vec;
use core::fmt;

pub use fix::{fix_reduction, recover_sat_count, SatCounts};
pub use formula::{count_sat, Formula, Literal, Variant, MAX_ORACLE_VARS};
pub use pred::{
    coverage_count, pred_reduction, reachable_pred_reduction, PredInstance, ReachablePred,
};

use crate::graph::ThresholdInstance;

/// Name of a gadget node. Indices are 1-based as in formula notation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GadgetLabel {
    /// Copy `copy` of variable `var`.
    S {
        var: usize,
        copy: usize,
    },
    Y {
        clause: usize,
        copy: usize,
    },
    Z {
        clause: usize,
        copy: usize,
    },
    B {
        clause: usize,
        copy: usize,
    },
    D {
        copy: usize,
    },
    /// Positive literal node.
    V {
        var: usize,
    },
    /// Negative literal node.
    VNeg {
        var: usize,
    },
    O {
        var: usize,
    },
    T {
        var: usize,
    },
    /// Clause checker.
    Clause {
        clause: usize,
    },
    /// Connector joined to every literal node.
    Hub,
    /// Clause node of the monotone-2CNF gadget.
    U {
        clause: usize,
    },
    /// Coverage node of the monotone-2CNF gadget.
    Cover,
}

impl fmt::Display for GadgetLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GadgetLabel::S { var, copy } => write!(f, "s{var}^{copy}"),
            GadgetLabel::Y { clause, copy } => write!(f, "y{clause}^{copy}"),
            GadgetLabel::Z { clause, copy } => write!(f, "z{clause}^{copy}"),
            GadgetLabel::B { clause, copy } => write!(f, "b{clause}^{copy}"),
            GadgetLabel::D { copy } => write!(f, "d^{copy}"),
            GadgetLabel::V { var } => write!(f, "v{var}"),
            GadgetLabel::VNeg { var } => write!(f, "v'{var}"),
            GadgetLabel::O { var } => write!(f, "o{var}"),
            GadgetLabel::T { var } => write!(f, "t{var}"),
            GadgetLabel::Clause { clause } => write!(f, "s{clause}"),
            GadgetLabel::Hub => f.write_str("u"),
            GadgetLabel::U { clause } => write!(f, "u{clause}"),
            GadgetLabel::Cover => f.write_str("d"),
        }
    }
}

/// A gadget instance and the name of every node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetInstance {
    pub instance: ThresholdInstance,
    pub labels: Vec<GadgetLabel>,
}

impl GadgetInstance {
    pub fn node_of(&self, label: GadgetLabel) -> Option<usize> {
        self.labels.iter().position(|&l| l == label)
    }
}

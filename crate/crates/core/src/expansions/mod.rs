//! Simulation-preserving transforms between instances.
//!
//! Each construction returns the new instance together with a *lift*, an
//! injective map from source profiles to target profiles under which one step
//! of the source dynamics corresponds to one step of the target dynamics.

mod bipartite;
mod iso;
mod removal;
mod symmetric;
mod weights;

use alloc::vec::Vec;
use core::fmt;

pub use bipartite::{bipartite_expansion, inverted_to_primary};
pub use iso::{find_isomorphism, DEFAULT_ISO_BUDGET};
pub use removal::{remove_constant_node, ReducedComponent};
pub use symmetric::{
    is_symmetric_model, one_step_symmetric_expansion, pivot, symmetric_expansion,
    symmetric_expansion_with, PivotOrder, DEFAULT_NODE_GUARD,
};
pub use weights::{
    integer_weights_to_unit, remove_self_loops, signed_to_primary, DEFAULT_BLOWUP_GUARD,
};

use crate::graph::ActionProfile;

/// How one target node is coloured from a source profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LiftRule {
    Copy(usize),
    Negate(usize),
    Const(bool),
}

/// Profile map from a source instance to a target instance.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Lift {
    source_len: usize,
    rules: Vec<LiftRule>,
}

impl Lift {
    pub fn new(source_len: usize, rules: Vec<LiftRule>) -> Self {
        Self { source_len, rules }
    }

    pub fn identity(n: usize) -> Self {
        Self::new(n, (0..n).map(LiftRule::Copy).collect())
    }

    pub fn source_len(&self) -> usize {
        self.source_len
    }

    pub fn target_len(&self) -> usize {
        self.rules.len()
    }

    pub fn rules(&self) -> &[LiftRule] {
        &self.rules
    }

    /// Panics if `a` does not have the source length.
    pub fn apply(&self, a: &ActionProfile) -> ActionProfile {
        assert_eq!(
            a.len(),
            self.source_len,
            "profile length does not match lift source"
        );
        let mut out = ActionProfile::all_white(self.rules.len());
        for (t, rule) in self.rules.iter().enumerate() {
            let v = match *rule {
                LiftRule::Copy(s) => a.get(s),
                LiftRule::Negate(s) => !a.get(s),
                LiftRule::Const(c) => c,
            };
            out.set(t, v);
        }
        out
    }

    /// `outer ∘ self`: first this lift, then `outer`.
    pub fn then(&self, outer: &Lift) -> Lift {
        assert_eq!(outer.source_len, self.rules.len(), "lifts do not compose");
        let rules = outer
            .rules
            .iter()
            .map(|r| match *r {
                LiftRule::Copy(x) => self.rules[x],
                LiftRule::Negate(x) => match self.rules[x] {
                    LiftRule::Copy(s) => LiftRule::Negate(s),
                    LiftRule::Negate(s) => LiftRule::Copy(s),
                    LiftRule::Const(c) => LiftRule::Const(!c),
                },
                c @ LiftRule::Const(_) => c,
            })
            .collect();
        Lift {
            source_len: self.source_len,
            rules,
        }
    }

    /// Injective iff every source node is read by some rule.
    pub fn is_injective(&self) -> bool {
        let mut read = alloc::vec![false; self.source_len];
        for r in &self.rules {
            if let LiftRule::Copy(s) | LiftRule::Negate(s) = *r {
                read[s] = true;
            }
        }
        read.into_iter().all(|x| x)
    }
}

/// Where a target node comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NodeRole {
    Original {
        node: usize,
    },
    Mirror {
        node: usize,
    },
    GadgetCenter {
        pivot: usize,
        block: usize,
    },
    GadgetLeaf {
        pivot: usize,
        block: usize,
        leaf: u8,
    },
    WeightCopy {
        node: usize,
        copy: usize,
    },
}

impl fmt::Display for NodeRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            NodeRole::Original { node } => write!(f, "original:{node}"),
            NodeRole::Mirror { node } => write!(f, "mirror:{node}"),
            NodeRole::GadgetCenter { pivot, block } => write!(f, "gadget-center:{pivot}/{block}"),
            NodeRole::GadgetLeaf { pivot, block, leaf } => {
                write!(f, "gadget-leaf:{pivot}/{block}/{leaf}")
            }
            NodeRole::WeightCopy { node, copy } => write!(f, "copy:{node}/{copy}"),
        }
    }
}

/// Output of every expansion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpansionResult<I> {
    pub instance: I,
    pub lift: Lift,
    pub node_map: Vec<NodeRole>,
}

/// First profile on which the square fails to commute.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub profile: ActionProfile,
    /// `lift(source(a))`
    pub expected: ActionProfile,
    /// `target(lift(a))`
    pub actual: ActionProfile,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommutationReport {
    pub holds: bool,
    pub checked: usize,
    pub counterexample: Option<Counterexample>,
}

/// Checks `lift(source(a)) == target(lift(a))` on every sample, stopping at
/// the first failure.
pub fn commutation_check<S, T, P>(
    source: S,
    target: T,
    lift: &Lift,
    samples: P,
) -> CommutationReport
where
    S: Fn(&ActionProfile) -> ActionProfile,
    T: Fn(&ActionProfile) -> ActionProfile,
    P: IntoIterator<Item = ActionProfile>,
{
    let mut checked = 0;
    for a in samples {
        checked += 1;
        let expected = lift.apply(&source(&a));
        let actual = target(&lift.apply(&a));
        if expected != actual {
            return CommutationReport {
                holds: false,
                checked,
                counterexample: Some(Counterexample {
                    profile: a,
                    expected,
                    actual,
                }),
            };
        }
    }
    CommutationReport {
        holds: true,
        checked,
        counterexample: None,
    }
}

/// All `2^n` profiles in increasing order; `n` must be below 64.
pub fn all_profiles(n: usize) -> impl Iterator<Item = ActionProfile> {
    assert!(n < 64, "too many nodes to enumerate");
    (0..1u64 << n).map(move |b| ActionProfile::from_bits(n, b))
}

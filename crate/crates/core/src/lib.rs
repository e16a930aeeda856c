//! Synchronous linear-threshold dynamics on finite undirected graphs.
//!
//! Every node plays `B` or `W`; in one step each node switches to `B` iff the
//! number of `B` neighbours reaches its threshold. The crate provides the
//! update maps, exact limit-cycle detection, state-space enumeration,
//! simulation-preserving graph expansions, counting gadgets built from
//! Boolean formulas and a brute-force resilience search.
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]

extern crate alloc;

pub mod dynamics;
pub mod enumeration;
mod error;
pub mod expansions;
pub mod graph;
pub mod reductions;
pub mod resilience;

pub use error::{Error, Result};
pub use graph::{ActionProfile, Graph, Rational, ThresholdDist, ThresholdInstance, TypeDist};

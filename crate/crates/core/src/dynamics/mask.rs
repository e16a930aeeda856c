use alloc::vec::Vec;

use super::WeightedGraph;
use crate::graph::{ActionProfile, Graph, ThresholdDist};
use crate::{Error, Result};

/// A deterministic update map on profiles of at most 64 nodes, encoded as the
/// low `n` bits of a `u64`.
pub trait BitStep {
    fn n(&self) -> usize;
    fn step_bits(&self, a: u64) -> u64;

    fn step_profile(&self, a: &ActionProfile) -> ActionProfile {
        ActionProfile::from_bits(self.n(), self.step_bits(a.to_bits()))
    }
}

impl<T: BitStep + ?Sized> BitStep for &T {
    fn n(&self) -> usize {
        (**self).n()
    }

    fn step_bits(&self, a: u64) -> u64 {
        (**self).step_bits(a)
    }
}

fn check_small(n: usize) -> Result<()> {
    if n > 64 {
        Err(Error::GuardExceeded {
            what: "nodes for bit-packed stepping",
            limit: 64,
        })
    } else {
        Ok(())
    }
}

/// Threshold rule with neighbourhoods as bit masks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaskRule {
    neighbors: Vec<u64>,
    k: Vec<u32>,
    inverted: bool,
}

impl MaskRule {
    pub fn new(g: &Graph, k: &ThresholdDist) -> Result<Self> {
        Self::build(g, k, false)
    }

    /// The complemented map `¬G_k`.
    pub fn inverted(g: &Graph, k: &ThresholdDist) -> Result<Self> {
        Self::build(g, k, true)
    }

    fn build(g: &Graph, k: &ThresholdDist, inverted: bool) -> Result<Self> {
        check_small(g.n())?;
        k.check_len(g.n())?;
        let neighbors = (0..g.n())
            .map(|i| g.neighbors(i).iter().fold(0u64, |m, &j| m | 1 << j))
            .collect();
        Ok(Self {
            neighbors,
            k: k.as_slice().to_vec(),
            inverted,
        })
    }

    pub fn neighbor_mask(&self, i: usize) -> u64 {
        self.neighbors[i]
    }

    pub fn thresholds(&self) -> &[u32] {
        &self.k
    }
}

impl BitStep for MaskRule {
    fn n(&self) -> usize {
        self.k.len()
    }

    #[inline]
    fn step_bits(&self, a: u64) -> u64 {
        let mut out = 0;
        for (i, (&m, &k)) in self.neighbors.iter().zip(&self.k).enumerate() {
            if ((a & m).count_ones() >= k) != self.inverted {
                out |= 1 << i;
            }
        }
        out
    }
}

/// Weighted rule, self-loops included, over bit-packed profiles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedMaskRule {
    terms: Vec<Vec<(u32, i64)>>,
    k: Vec<i64>,
}

impl WeightedMaskRule {
    pub fn new(w: &WeightedGraph) -> Result<Self> {
        check_small(w.n())?;
        let terms = (0..w.n())
            .map(|i| {
                w.weighted_neighbors(i)
                    .iter()
                    .map(|&(j, wij)| (j as u32, wij))
                    .collect()
            })
            .collect();
        Ok(Self {
            terms,
            k: w.thresholds().to_vec(),
        })
    }
}

impl BitStep for WeightedMaskRule {
    fn n(&self) -> usize {
        self.k.len()
    }

    fn step_bits(&self, a: u64) -> u64 {
        let mut out = 0;
        for (i, (terms, &k)) in self.terms.iter().zip(&self.k).enumerate() {
            let sum: i64 = terms
                .iter()
                .filter(|&&(j, _)| a >> j & 1 == 1)
                .map(|&(_, w)| w)
                .sum();
            if sum >= k {
                out |= 1 << i;
            }
        }
        out
    }
}

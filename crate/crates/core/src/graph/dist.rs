use alloc::vec::Vec;
use core::ops::Index;

use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::Graph;
use crate::{Error, Result};

/// Exact rational used for types and resilience values.
pub type Rational = num_rational::Ratio<i64>;

/// Integer thresholds, one per node. Values of 0 or above the degree are
/// allowed; they pin a node to one action.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ThresholdDist(Vec<u32>);

impl ThresholdDist {
    pub fn new(k: Vec<u32>) -> Self {
        Self(k)
    }

    pub fn uniform(n: usize, k: u32) -> Self {
        Self(alloc::vec![k; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<u32> {
        self.0
    }

    pub(crate) fn check_len(&self, n: usize) -> Result<()> {
        if self.0.len() == n {
            Ok(())
        } else {
            Err(Error::LengthMismatch {
                expected: n,
                found: self.0.len(),
            })
        }
    }
}

impl Index<usize> for ThresholdDist {
    type Output = u32;

    fn index(&self, i: usize) -> &u32 {
        &self.0[i]
    }
}

impl From<Vec<u32>> for ThresholdDist {
    fn from(k: Vec<u32>) -> Self {
        Self(k)
    }
}

/// Rational types `q_i` in `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TypeDist(Vec<Rational>);

impl TypeDist {
    pub fn new(q: Vec<Rational>) -> Result<Self> {
        for (node, x) in q.iter().enumerate() {
            if x.is_negative() || *x > Rational::from_integer(1) {
                return Err(Error::InvalidType { node });
            }
        }
        Ok(Self(q))
    }

    /// From `(numerator, denominator)` pairs.
    pub fn from_pairs(pairs: &[(i64, i64)]) -> Result<Self> {
        let mut q = Vec::with_capacity(pairs.len());
        for (node, &(num, den)) in pairs.iter().enumerate() {
            if den == 0 {
                return Err(Error::InvalidType { node });
            }
            q.push(Rational::new(num, den));
        }
        Self::new(q)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.0
    }

    /// Sum of the types.
    pub fn l1(&self) -> Rational {
        self.0.iter().fold(Rational::zero(), |acc, x| acc + x)
    }

    pub(crate) fn check_len(&self, n: usize) -> Result<()> {
        if self.0.len() == n {
            Ok(())
        } else {
            Err(Error::LengthMismatch {
                expected: n,
                found: self.0.len(),
            })
        }
    }
}

impl Index<usize> for TypeDist {
    type Output = Rational;

    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

/// A graph together with its thresholds.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ThresholdInstance {
    pub graph: Graph,
    pub thresholds: ThresholdDist,
}

impl ThresholdInstance {
    pub fn new(graph: Graph, thresholds: ThresholdDist) -> Result<Self> {
        thresholds.check_len(graph.n())?;
        Ok(Self { graph, thresholds })
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }
}

/// `true` iff `1 <= k_i <= d_i`.
pub fn is_valid_node(g: &Graph, k: &ThresholdDist, i: usize) -> bool {
    let ki = k[i] as usize;
    ki >= 1 && ki <= g.degree(i)
}

/// `k_i = floor(q_i d_i) + 1`, so that `count >= k_i` iff `count > q_i d_i`.
pub fn types_to_thresholds(g: &Graph, q: &TypeDist) -> Result<ThresholdDist> {
    q.check_len(g.n())?;
    let k = (0..g.n())
        .map(|i| {
            let num = i128::from(*q[i].numer()) * g.degree(i) as i128;
            let den = i128::from(*q[i].denom());
            (Integer::div_floor(&num, &den) + 1) as u32
        })
        .collect();
    Ok(ThresholdDist(k))
}

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use crate::{Error, Result};

/// One action per node, packed into 64-bit words. Bit `i` is node `i`; a set
/// bit means `B`.
///
/// Profiles of equal length are totally ordered by their integer value,
/// node 0 being the least significant bit.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ActionProfile {
    len: usize,
    words: Vec<u64>,
}

impl ActionProfile {
    pub fn all_white(len: usize) -> Self {
        Self {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn all_black(len: usize) -> Self {
        let mut p = Self {
            len,
            words: vec![u64::MAX; len.div_ceil(64)],
        };
        p.trim();
        p
    }

    /// Profile whose first `len` nodes are the low bits of `bits`.
    ///
    /// Panics if `len > 64`.
    pub fn from_bits(len: usize, bits: u64) -> Self {
        assert!(len <= 64, "from_bits needs len <= 64");
        let mut p = Self {
            len,
            words: if len == 0 { Vec::new() } else { vec![bits] },
        };
        p.trim();
        p
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut p = Self::all_white(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            p.set(i, b);
        }
        p
    }

    fn trim(&mut self) {
        let r = self.len % 64;
        if r != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << r) - 1;
            }
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// `true` means `B`.
    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "node {i} out of range");
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, black: bool) {
        assert!(i < self.len, "node {i} out of range");
        let m = 1u64 << (i % 64);
        if black {
            self.words[i / 64] |= m;
        } else {
            self.words[i / 64] &= !m;
        }
    }

    /// The low 64 bits; exact when `len <= 64`.
    pub fn to_bits(&self) -> u64 {
        self.words.first().copied().unwrap_or(0)
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn count_black(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn complement(&self) -> Self {
        let mut p = Self {
            len: self.len,
            words: self.words.iter().map(|w| !w).collect(),
        };
        p.trim();
        p
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// Nodes playing `B`, ascending.
    pub fn black_nodes(&self) -> Vec<usize> {
        (0..self.len).filter(|&i| self.get(i)).collect()
    }

    /// Number of positions where the profiles differ.
    pub fn hamming(&self, other: &Self) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum()
    }

    pub(crate) fn check_len(&self, expected: usize) -> Result<()> {
        if self.len == expected {
            Ok(())
        } else {
            Err(Error::LengthMismatch {
                expected,
                found: self.len,
            })
        }
    }
}

impl Ord for ActionProfile {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len
            .cmp(&other.len)
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl PartialOrd for ActionProfile {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ActionProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "B" } else { "W" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for ActionProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ActionProfile({self})")
    }
}

impl FromStr for ActionProfile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Self::all_white(s.chars().count());
        for (i, c) in s.chars().enumerate() {
            match c {
                'B' | 'b' => p.set(i, true),
                'W' | 'w' => {}
                _ => {
                    return Err(Error::BadParameter(alloc::format!(
                        "profile character {c:?} at position {i} is not B or W"
                    )))
                }
            }
        }
        Ok(p)
    }
}

impl From<ActionProfile> for String {
    fn from(p: ActionProfile) -> String {
        alloc::format!("{p}")
    }
}

use alloc::vec;
use alloc::vec::Vec;

use crate::dynamics::BitStep;
use crate::enumeration::census::check_guard;
use crate::Result;

/// Functional-graph analysis of a map on `0..N`: for every state, the number
/// of steps to reach its limit cycle and that cycle's length.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StateSpace {
    successor: Vec<u32>,
    transient: Vec<u32>,
    period: Vec<u32>,
    /// One representative (the first state found) per cycle, with its length.
    cycles: Vec<(u32, u32)>,
}

const UNSEEN: u32 = u32::MAX;
const ON_PATH: u32 = u32::MAX - 1;

impl StateSpace {
    pub fn new() -> Self {
        Self::default()
    }

    /// Tabulates `rule` on all `2^n` profiles and analyses the result.
    pub fn of<B: BitStep>(rule: &B) -> Result<Self> {
        let mut s = Self::new();
        s.analyze_rule(rule)?;
        Ok(s)
    }

    /// Reuses the buffers of `self`.
    pub fn analyze_rule<B: BitStep>(&mut self, rule: &B) -> Result<()> {
        check_guard(rule.n(), 31)?;
        let size = 1usize << rule.n();
        self.successor.clear();
        self.successor
            .extend((0..size as u64).map(|a| rule.step_bits(a) as u32));
        self.analyze_table();
        Ok(())
    }

    /// Analyses an explicit successor table; every entry must be a valid index.
    pub fn from_table(successor: Vec<u32>) -> Self {
        let mut s = Self {
            successor,
            ..Self::default()
        };
        s.analyze_table();
        s
    }

    fn analyze_table(&mut self) {
        let size = self.successor.len();
        // `period` doubles as the visit marker, `transient` as the path index
        // of states still on the current path.
        self.transient.clear();
        self.transient.resize(size, 0);
        self.period.clear();
        self.period.resize(size, UNSEEN);
        self.cycles.clear();
        let mut path: Vec<u32> = Vec::new();
        for start in 0..size as u32 {
            if self.period[start as usize] != UNSEEN {
                continue;
            }
            path.clear();
            let mut x = start;
            while self.period[x as usize] == UNSEEN {
                self.period[x as usize] = ON_PATH;
                self.transient[x as usize] = path.len() as u32;
                path.push(x);
                x = self.successor[x as usize];
            }
            if self.period[x as usize] == ON_PATH {
                let pos = self.transient[x as usize] as usize;
                let len = (path.len() - pos) as u32;
                for &y in &path[pos..] {
                    self.transient[y as usize] = 0;
                    self.period[y as usize] = len;
                }
                self.cycles.push((x, len));
                path.truncate(pos);
            }
            for &y in path.iter().rev() {
                let next = self.successor[y as usize] as usize;
                self.transient[y as usize] = self.transient[next] + 1;
                self.period[y as usize] = self.period[next];
            }
        }
    }

    pub fn states(&self) -> usize {
        self.successor.len()
    }

    pub fn successor(&self, a: u32) -> u32 {
        self.successor[a as usize]
    }

    pub fn transient(&self, a: u32) -> u32 {
        self.transient[a as usize]
    }

    pub fn period(&self, a: u32) -> u32 {
        self.period[a as usize]
    }

    /// `(representative, length)` for every cycle.
    pub fn cycles(&self) -> &[(u32, u32)] {
        &self.cycles
    }

    pub fn max_transient(&self) -> u32 {
        self.transient.iter().copied().max().unwrap_or(0)
    }

    pub fn max_period(&self) -> u32 {
        self.cycles.iter().map(|c| c.1).max().unwrap_or(0)
    }

    /// State with the longest transient, smallest first.
    pub fn slowest_state(&self) -> Option<u32> {
        let m = self.max_transient();
        self.transient
            .iter()
            .position(|&t| t == m)
            .map(|p| p as u32)
    }

    /// Number of cycles of each length `1..=max_period`, index 0 unused.
    pub fn period_histogram(&self) -> Vec<u64> {
        let mut h = vec![0u64; self.max_period() as usize + 1];
        for &(_, len) in &self.cycles {
            h[len as usize] += 1;
        }
        h
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rho_shaped_table() {
        // 0 -> 1 -> 2 -> 3 -> 1, 4 -> 4, 5 -> 0
        let s = StateSpace::from_table(vec![1, 2, 3, 1, 4, 0]);
        assert_eq!(s.cycles(), &[(1, 3), (4, 1)]);
        assert_eq!((s.transient(5), s.period(5)), (2, 3));
        assert_eq!((s.transient(3), s.period(3)), (0, 3));
        assert_eq!(s.max_transient(), 2);
        assert_eq!(s.slowest_state(), Some(5));
        assert_eq!(s.period_histogram(), vec![0, 1, 0, 1]);
    }
}

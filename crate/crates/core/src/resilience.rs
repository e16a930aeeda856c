//! Cheapest type allocations under which every small perturbation of the
//! all-`W` profile dies out.
//!
//! A type distribution `q` *recovers* `g` against `K` deviations when every
//! profile with at most `K` black nodes ends at the all-`W` fixed point. The
//! resilience `μ^K(g)` is the least `‖q‖₁` over recovering `q`. Only types of
//! the form `m / d_i` matter, so the search runs over that grid.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::dynamics::{BitStep, MaskRule};
use crate::graph::{types_to_thresholds, ActionProfile, Graph, Rational, TypeDist};
use crate::{Error, Result};

/// Largest number of seed profiles examined by one recovery check.
pub const SEED_GUARD: u64 = 1 << 24;
/// Largest grid `Π(d_i + 1)` searched by the brute force.
pub const GRID_GUARD: u64 = 1 << 24;

/// Recovery question for one graph and budget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecoveryProblem {
    pub graph: Graph,
    /// Perturbation budget, clamped to `1..=n`.
    pub budget: usize,
}

impl RecoveryProblem {
    pub fn new(graph: Graph, budget: usize) -> Result<Self> {
        let budget = clamp_budget(&graph, budget)?;
        Ok(Self { graph, budget })
    }

    /// Candidate types `0, 1/d_i, ..., 1` of node `i`.
    pub fn candidates(&self, i: usize) -> Vec<Rational> {
        let d = self.graph.degree(i) as i64;
        (0..=d).map(|m| Rational::new(m, d)).collect()
    }

    pub fn grid_size(&self) -> Option<u64> {
        (0..self.graph.n()).try_fold(1u64, |acc, i| {
            acc.checked_mul(self.graph.degree(i) as u64 + 1)
        })
    }
}

fn clamp_budget(g: &Graph, budget: usize) -> Result<usize> {
    if budget == 0 {
        return Err(Error::BadParameter(
            "perturbation budget must be at least 1".into(),
        ));
    }
    if g.n() < 2 {
        return Err(Error::BadParameter(
            "resilience needs at least two nodes".into(),
        ));
    }
    if g.n() > 63 {
        return Err(Error::GuardExceeded {
            what: "nodes for recovery checks",
            limit: 63,
        });
    }
    Ok(budget.min(g.n()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecoveryCheck {
    pub recovers: bool,
    /// Smallest failing seed in (size, value) order.
    pub failing_seed: Option<ActionProfile>,
    pub seeds_checked: u64,
}

fn binomial_prefix(n: usize, k: usize) -> u64 {
    let mut total = 0u64;
    let mut c = 1u64;
    for j in 0..=k {
        total = total.saturating_add(c);
        c = c.saturating_mul((n - j) as u64) / (j as u64 + 1);
    }
    total
}

/// Seeds with at most `k` black nodes, by size then value.
fn for_each_seed(n: usize, k: usize, mut f: impl FnMut(u64) -> bool) {
    for size in 0..=k {
        // Gosper's hack over `size`-subsets of `n` bits.
        if size == 0 {
            if !f(0) {
                return;
            }
            continue;
        }
        let mut x: u64 = (1 << size) - 1;
        while x < 1 << n {
            if !f(x) {
                return;
            }
            let c = x & x.wrapping_neg();
            let r = x + c;
            x = (((r ^ x) >> 2) / c) | r;
        }
    }
}

/// Recovery check on a prepared rule; `memo` maps states to their outcome.
fn recovers_from(rule: &MaskRule, seed: u64, memo: &mut HashMap<u64, bool>) -> bool {
    let mut path: Vec<u64> = Vec::new();
    let mut on_path: HashMap<u64, ()> = HashMap::new();
    let mut x = seed;
    let outcome = loop {
        if x == 0 {
            break true;
        }
        if let Some(&r) = memo.get(&x) {
            break r;
        }
        if on_path.insert(x, ()).is_some() {
            break false;
        }
        path.push(x);
        x = rule.step_bits(x);
    };
    for s in path {
        memo.insert(s, outcome);
    }
    outcome
}

/// Whether `q` recovers `g` from every profile with at most `budget` black
/// nodes; stops at the first failing seed.
pub fn check_recovery(g: &Graph, q: &TypeDist, budget: usize) -> Result<RecoveryCheck> {
    let budget = clamp_budget(g, budget)?;
    let k = types_to_thresholds(g, q)?;
    let rule = MaskRule::new(g, &k)?;
    let seeds = binomial_prefix(g.n(), budget);
    if seeds > SEED_GUARD {
        return Err(Error::GuardExceeded {
            what: "seed profiles",
            limit: SEED_GUARD,
        });
    }
    Ok(check_rule(&rule, g.n(), budget))
}

fn check_rule(rule: &MaskRule, n: usize, budget: usize) -> RecoveryCheck {
    let mut memo = HashMap::new();
    let mut checked = 0;
    let mut failing = None;
    for_each_seed(n, budget, |seed| {
        checked += 1;
        if recovers_from(rule, seed, &mut memo) {
            true
        } else {
            failing = Some(seed);
            false
        }
    });
    RecoveryCheck {
        recovers: failing.is_none(),
        failing_seed: failing.map(|s| ActionProfile::from_bits(n, s)),
        seeds_checked: checked,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResilienceResult {
    pub mu: Rational,
    pub witness_q: TypeDist,
    /// Seed checks performed, summed over all candidates tried.
    pub evaluations: u64,
}

/// Grid search in order of increasing `‖q‖₁`.
///
/// With `L` the lcm of the degrees, choosing `q_i = m / d_i` costs
/// `m * L / d_i` units, and every achievable total is a *level*. Levels are
/// visited in increasing order and, inside a level, allocations are visited
/// lexicographically; a reachability table over suffix sums prunes
/// allocations that cannot land exactly on the level.
#[derive(Debug, Clone)]
pub struct ResilienceSearch {
    graph: Graph,
    budget: usize,
    lcm: u64,
    unit: Vec<u64>,
    // suffix[i][s]: nodes i.. can contribute exactly s units
    suffix: Vec<Vec<bool>>,
}

impl ResilienceSearch {
    pub fn new(g: &Graph, budget: usize) -> Result<Self> {
        let problem = RecoveryProblem::new(g.clone(), budget)?;
        match problem.grid_size() {
            Some(size) if size <= GRID_GUARD => {}
            _ => {
                return Err(Error::GuardExceeded {
                    what: "type grid size",
                    limit: GRID_GUARD,
                })
            }
        }
        if binomial_prefix(g.n(), problem.budget) > SEED_GUARD {
            return Err(Error::GuardExceeded {
                what: "seed profiles",
                limit: SEED_GUARD,
            });
        }
        let lcm = (0..g.n()).fold(1u64, |acc, i| acc.lcm(&(g.degree(i) as u64)));
        let total = lcm * g.n() as u64;
        if total > GRID_GUARD {
            return Err(Error::GuardExceeded {
                what: "cost levels",
                limit: GRID_GUARD,
            });
        }
        let unit: Vec<u64> = (0..g.n()).map(|i| lcm / g.degree(i) as u64).collect();
        let n = g.n();
        let mut suffix = vec![vec![false; total as usize + 1]; n + 1];
        suffix[n][0] = true;
        for i in (0..n).rev() {
            for s in 0..=total as usize {
                if suffix[i + 1][s] {
                    for m in 0..=g.degree(i) {
                        suffix[i][s + m * unit[i] as usize] = true;
                    }
                }
            }
        }
        Ok(Self {
            graph: g.clone(),
            budget: problem.budget,
            lcm,
            unit,
            suffix,
        })
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    /// Achievable totals in increasing order, in units of `1 / lcm`.
    pub fn levels(&self) -> Vec<u64> {
        (0..self.suffix[0].len() as u64)
            .filter(|&s| self.suffix[0][s as usize])
            .collect()
    }

    pub fn level_value(&self, level: u64) -> Rational {
        Rational::new(level as i64, self.lcm as i64)
    }

    /// Partial allocations of the first `depth` nodes that can still complete
    /// to `level`, in lexicographic order.
    pub fn prefixes(&self, level: u64, depth: usize) -> Vec<Vec<u32>> {
        let depth = depth.min(self.graph.n());
        let mut out = Vec::new();
        let mut cur = Vec::new();
        self.collect_prefixes(level, depth, 0, &mut cur, &mut out);
        out
    }

    fn collect_prefixes(
        &self,
        rest: u64,
        depth: usize,
        i: usize,
        cur: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if !self.suffix[i][rest as usize] {
            return;
        }
        if i == depth {
            out.push(cur.clone());
            return;
        }
        for m in 0..=self.graph.degree(i) as u64 {
            let cost = m * self.unit[i];
            if cost > rest {
                break;
            }
            cur.push(m as u32);
            self.collect_prefixes(rest - cost, depth, i + 1, cur, out);
            cur.pop();
        }
    }

    /// First recovering allocation at `level` that extends `prefix`, with the
    /// number of seed checks spent.
    pub fn search_prefix(&self, level: u64, prefix: &[u32]) -> (Option<Vec<u32>>, u64) {
        let spent: u64 = prefix
            .iter()
            .enumerate()
            .map(|(i, &m)| u64::from(m) * self.unit[i])
            .sum();
        let mut evaluations = 0;
        let mut cur = prefix.to_vec();
        let found =
            spent <= level && self.dfs(level - spent, prefix.len(), &mut cur, &mut evaluations);
        (found.then_some(cur), evaluations)
    }

    fn dfs(&self, rest: u64, i: usize, cur: &mut Vec<u32>, evaluations: &mut u64) -> bool {
        if !self.suffix[i][rest as usize] {
            return false;
        }
        if i == self.graph.n() {
            let k = self.thresholds(cur);
            let rule = MaskRule::new(&self.graph, &k).expect("small graph");
            let check = check_rule(&rule, self.graph.n(), self.budget);
            *evaluations += check.seeds_checked;
            return check.recovers;
        }
        for m in 0..=self.graph.degree(i) as u64 {
            let cost = m * self.unit[i];
            if cost > rest {
                break;
            }
            cur.push(m as u32);
            if self.dfs(rest - cost, i + 1, cur, evaluations) {
                return true;
            }
            cur.pop();
        }
        false
    }

    // q_i = m / d_i gives threshold m + 1.
    fn thresholds(&self, alloc: &[u32]) -> crate::graph::ThresholdDist {
        crate::graph::ThresholdDist::new(alloc.iter().map(|&m| m + 1).collect())
    }

    pub fn types(&self, alloc: &[u32]) -> TypeDist {
        let q = alloc
            .iter()
            .enumerate()
            .map(|(i, &m)| Rational::new(i64::from(m), self.graph.degree(i) as i64))
            .collect();
        TypeDist::new(q).expect("grid types lie in [0, 1]")
    }

    pub fn result(&self, level: u64, alloc: &[u32], evaluations: u64) -> ResilienceResult {
        ResilienceResult {
            mu: self.level_value(level),
            witness_q: self.types(alloc),
            evaluations,
        }
    }
}

/// Exact `μ^K(g)` over the type grid.
pub fn resilience_bruteforce(g: &Graph, budget: usize) -> Result<ResilienceResult> {
    let search = ResilienceSearch::new(g, budget)?;
    let mut evaluations = 0;
    for level in search.levels() {
        let (found, spent) = search.search_prefix(level, &[]);
        evaluations += spent;
        if let Some(alloc) = found {
            return Ok(search.result(level, &alloc, evaluations));
        }
    }
    // q = 1 everywhere always recovers, so the top level always succeeds.
    unreachable!("the all-ones allocation recovers every graph")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// Node 0 joined to every other node.
    Star,
    Path,
    Cycle,
    Complete,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Star => "star",
            Family::Path => "path",
            Family::Cycle => "cycle",
            Family::Complete => "complete",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "star" => Ok(Family::Star),
            "path" => Ok(Family::Path),
            "cycle" => Ok(Family::Cycle),
            "complete" => Ok(Family::Complete),
            other => Err(Error::BadParameter(format!("unknown family {other:?}"))),
        }
    }

    fn min_size(self) -> usize {
        match self {
            Family::Cycle => 3,
            _ => 2,
        }
    }

    /// The family member on `n` nodes.
    pub fn graph(self, n: usize) -> Result<Graph> {
        if n < self.min_size() {
            return Err(Error::BadParameter(format!(
                "{} needs at least {} nodes",
                self.name(),
                self.min_size()
            )));
        }
        let edges: Vec<(usize, usize)> = match self {
            Family::Star => (1..n).map(|i| (0, i)).collect(),
            Family::Path => (1..n).map(|i| (i - 1, i)).collect(),
            Family::Cycle => (0..n).map(|i| (i, (i + 1) % n)).collect(),
            Family::Complete => (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .collect(),
        };
        Graph::new(n, &edges)
    }
}

/// Known values of `μ^K` for the four families. The path formula holds only
/// for `K < ⌈n/2⌉`; for cycles with `K ≥ ⌈n/2⌉` the value is `n/2`.
pub fn resilience_closed_form(family: Family, n: usize, budget: usize) -> Result<Rational> {
    if n < family.min_size() || budget == 0 {
        return Err(Error::OutOfFormulaRange);
    }
    let k = budget.min(n) as i64;
    let n_i = n as i64;
    let half_up = n.div_ceil(2) as i64;
    Ok(match family {
        Family::Star => Rational::one(),
        Family::Path if k < half_up => Rational::new(n_i - 1 - (n_i - 1) / (2 * k + 1), 2),
        Family::Path => return Err(Error::OutOfFormulaRange),
        Family::Cycle if k < half_up => Rational::new(n_i - n_i / (2 * k + 1), 2),
        Family::Cycle => Rational::new(n_i, 2),
        Family::Complete => Rational::new(k * (k - 1) / 2 + k * (n_i - k), n_i - 1),
    })
}

/// Degree-order allocation: with nodes ranked by (degree, id), each node's
/// type is the fraction of its neighbours ranked below it.
pub fn greedy_upper_bound_q(g: &Graph) -> TypeDist {
    let rank = |i: usize| (g.degree(i), i);
    let q = (0..g.n())
        .map(|i| {
            let d = g.degree(i) as i64;
            if d == 0 {
                return Rational::zero();
            }
            let below = g
                .neighbors(i)
                .iter()
                .filter(|&&j| rank(j) < rank(i))
                .count() as i64;
            Rational::new(below, d)
        })
        .collect();
    TypeDist::new(q).expect("fractions of neighbours lie in [0, 1]")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundsReport {
    pub mu: Rational,
    /// `μ - 1`
    pub lower_slack: Rational,
    /// `n/2 - μ`
    pub upper_slack: Rational,
    pub holds: bool,
}

/// Brute-force `μ^K` and compare it with the bounds `1 ≤ μ ≤ n/2`.
pub fn verify_bounds(g: &Graph, budget: usize) -> Result<BoundsReport> {
    let r = resilience_bruteforce(g, budget)?;
    Ok(bounds_report(g, r.mu))
}

pub fn bounds_report(g: &Graph, mu: Rational) -> BoundsReport {
    let lower_slack = mu - Rational::one();
    let upper_slack = Rational::new(g.n() as i64, 2) - mu;
    BoundsReport {
        mu,
        lower_slack,
        upper_slack,
        holds: lower_slack >= Rational::zero() && upper_slack >= Rational::zero(),
    }
}

//! The verification suites behind `threshold-lab verify` and the acceptance
//! test. Every comparison is exact.

use std::fmt::Write as _;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use threshold_core::dynamics::{
    step, step_inverted, step_weighted, BitStep, MaskRule, WeightedMaskRule,
};
use threshold_core::enumeration::{
    bipartite_cycle_identity, build_extremal_cycle_instance, count_fixed_points_backtracking,
    enumerate_limits, is_reachable, ExtremalKind, StateSpace, DEFAULT_GUARD_N,
};
use threshold_core::expansions::{
    all_profiles, bipartite_expansion, commutation_check, integer_weights_to_unit,
    inverted_to_primary, is_symmetric_model, one_step_symmetric_expansion, remove_self_loops,
    signed_to_primary, symmetric_expansion, CommutationReport, ExpansionResult,
    DEFAULT_BLOWUP_GUARD,
};
use threshold_core::reductions::{
    count_sat, fix_reduction, pred_reduction, reachable_pred_reduction, recover_sat_count, Formula,
    Variant,
};
use threshold_core::resilience::{
    bounds_report, check_recovery, greedy_upper_bound_q, resilience_closed_form, Family,
};
use threshold_core::{Error, Graph, Rational, ThresholdDist, ThresholdInstance};

use crate::gen;
use crate::parallel::{self, map_ordered};

pub const CRITERIA: u8 = 10;
/// Sizes of the random samples.
pub const WEIGHTED_SAMPLES: usize = 1000;
pub const COMMUTATION_SAMPLES: usize = 500;
pub const FIX_SAMPLES: usize = 50;
pub const PRED_SAMPLES: usize = 200;
pub const GREEDY_SAMPLES: usize = 100;
/// Witnesses kept per failing check.
const MAX_WITNESSES: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteConfig {
    pub seed: u64,
    pub workers: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriterionReport {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl std::fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "criterion {:>2} {} {:<26} {} [{:.1}s]",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.detail,
            self.elapsed.as_secs_f64()
        )
    }
}

#[derive(Debug, Clone, Default)]
struct ScanStats {
    graphs: u64,
    instances: u64,
    profiles: u64,
    max_transient: usize,
    long_cycles: Vec<String>,
    slow: Vec<String>,
}

impl ScanStats {
    fn absorb(&mut self, other: ScanStats) {
        self.graphs += other.graphs;
        self.instances += other.instances;
        self.profiles += other.profiles;
        self.max_transient = self.max_transient.max(other.max_transient);
        for (dst, src) in [
            (&mut self.long_cycles, other.long_cycles),
            (&mut self.slow, other.slow),
        ] {
            dst.extend(src);
            dst.truncate(MAX_WITNESSES);
        }
    }

    /// Record one instance; `bound` caps the transient.
    fn record<B: BitStep>(
        &mut self,
        space: &mut StateSpace,
        rule: &B,
        bound: usize,
        label: impl Fn() -> String,
    ) {
        space.analyze_rule(rule).expect("small instance");
        self.instances += 1;
        self.profiles += space.states() as u64;
        let transient = space.max_transient() as usize;
        self.max_transient = self.max_transient.max(transient);
        if space.max_period() > 2 && self.long_cycles.len() < MAX_WITNESSES {
            self.long_cycles
                .push(format!("{} period {}", label(), space.max_period()));
        }
        if transient > bound && self.slow.len() < MAX_WITNESSES {
            self.slow
                .push(format!("{} transient {transient} > {bound}", label()));
        }
    }
}

fn envelope(g: &Graph) -> usize {
    14 * g.edge_count() + 6 * g.n()
}

/// Runs criteria, sharing the exhaustive scans between the ones that need
/// them.
pub struct Suite {
    cfg: SuiteConfig,
    exhaustive: OnceLock<ScanStats>,
    weighted: OnceLock<ScanStats>,
}

impl Suite {
    pub fn new(cfg: SuiteConfig) -> Self {
        Self {
            cfg,
            exhaustive: OnceLock::new(),
            weighted: OnceLock::new(),
        }
    }

    fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.cfg.seed);
        rng.set_stream(stream);
        rng
    }

    pub fn run_all(&self) -> Vec<CriterionReport> {
        (1..=CRITERIA).map(|id| self.run(id)).collect()
    }

    pub fn run(&self, id: u8) -> CriterionReport {
        let start = Instant::now();
        let (name, passed, detail) = match id {
            1 => self.cycle_lengths(),
            2 => self.weighted_cycle_lengths(),
            3 => self.convergence_time(),
            4 => self.commutation(),
            5 => self.fixed_point_identity(),
            6 => self.fix_reduction(),
            7 => self.pred_reduction(),
            8 => self.reachable_pred(),
            9 => self.resilience(),
            10 => self.extremal(),
            _ => ("unknown", false, format!("no criterion {id}")),
        };
        CriterionReport {
            id,
            name,
            passed,
            detail,
            elapsed: start.elapsed(),
        }
    }

    fn exhaustive_scan(&self) -> &ScanStats {
        self.exhaustive.get_or_init(|| {
            let graphs: Vec<Graph> = (1..=6).flat_map(gen::connected_graphs).collect();
            let parts = map_ordered(&graphs, self.cfg.workers, |g| {
                let mut stats = ScanStats {
                    graphs: 1,
                    ..ScanStats::default()
                };
                let mut space = StateSpace::new();
                for k in gen::all_thresholds(g) {
                    let rule = MaskRule::new(g, &k).unwrap();
                    stats.record(&mut space, &rule, envelope(g), || {
                        format!("{:?} k={:?}", g.edges(), k.as_slice())
                    });
                }
                stats
            });
            parts.into_iter().fold(ScanStats::default(), |mut a, b| {
                a.absorb(b);
                a
            })
        })
    }

    fn weighted_scan(&self) -> &ScanStats {
        self.weighted.get_or_init(|| {
            let mut rng = self.rng(2);
            let instances: Vec<_> = (0..WEIGHTED_SAMPLES)
                .map(|_| {
                    let n = rng.random_range(1..=6);
                    let g = {
                        let p = rng.random_range(0.0..1.0);
                        gen::random_graph(&mut rng, n, p)
                    };
                    gen::random_weighted(&mut rng, &g, &[-2, -1, 1, 2], 0.3, -4..=4)
                })
                .collect();
            let parts = map_ordered(&instances, self.cfg.workers, |w| {
                let mut stats = ScanStats::default();
                let rule = WeightedMaskRule::new(w).unwrap();
                stats.record(&mut StateSpace::new(), &rule, envelope(w.graph()), || {
                    format!("{w:?}")
                });
                stats
            });
            parts.into_iter().fold(ScanStats::default(), |mut a, b| {
                a.absorb(b);
                a
            })
        })
    }

    fn cycle_lengths(&self) -> (&'static str, bool, String) {
        let s = self.exhaustive_scan();
        let detail = format!(
            "{} graphs, {} instances, {} profiles, {} with period > 2{}",
            s.graphs,
            s.instances,
            s.profiles,
            s.long_cycles.len(),
            witnesses(&s.long_cycles)
        );
        ("cycle length <= 2", s.long_cycles.is_empty(), detail)
    }

    fn weighted_cycle_lengths(&self) -> (&'static str, bool, String) {
        let s = self.weighted_scan();
        let detail = format!(
            "{} weighted instances, {} profiles, {} with period > 2{}",
            s.instances,
            s.profiles,
            s.long_cycles.len(),
            witnesses(&s.long_cycles)
        );
        (
            "weighted cycle length <= 2",
            s.long_cycles.is_empty(),
            detail,
        )
    }

    fn convergence_time(&self) -> (&'static str, bool, String) {
        let mut graphs: Vec<Graph> = (1..=8).flat_map(gen::trees).collect();
        let tree_count = graphs.len();
        graphs.extend([4, 6, 8].map(|n| Family::Cycle.graph(n).unwrap()));
        let parts = map_ordered(&graphs, self.cfg.workers, |g| {
            let mut stats = ScanStats::default();
            let mut space = StateSpace::new();
            for k in gen::all_thresholds(g) {
                let rule = MaskRule::new(g, &k).unwrap();
                stats.record(&mut space, &rule, g.n(), || {
                    format!("{:?} k={:?}", g.edges(), k.as_slice())
                });
            }
            stats
        });
        let linear = parts.into_iter().fold(ScanStats::default(), |mut a, b| {
            a.absorb(b);
            a
        });
        let exhaustive = self.exhaustive_scan();
        let weighted = self.weighted_scan();
        let slow: Vec<String> = exhaustive
            .slow
            .iter()
            .chain(&weighted.slow)
            .take(MAX_WITNESSES)
            .cloned()
            .collect();
        let passed = linear.slow.is_empty() && linear.long_cycles.is_empty() && slow.is_empty();
        let detail = format!(
            "(a) {tree_count} trees + cycles 4,6,8: {} instances, max delta {}, {} over n{}; \
             (b) {} instances, max delta {}, {} over 14|E|+6n{}",
            linear.instances,
            linear.max_transient,
            linear.slow.len(),
            witnesses(&linear.slow),
            exhaustive.instances + weighted.instances,
            exhaustive.max_transient.max(weighted.max_transient),
            slow.len(),
            witnesses(&slow)
        );
        ("convergence time", passed, detail)
    }

    fn commutation(&self) -> (&'static str, bool, String) {
        let mut rng = self.rng(4);
        let samples: Vec<_> = (0..COMMUTATION_SAMPLES)
            .map(|_| {
                let n = rng.random_range(1..=6);
                let g = {
                    let p = rng.random_range(0.0..1.0);
                    gen::random_graph(&mut rng, n, p)
                };
                let k = gen::random_thresholds(&mut rng, &g);
                let signed = gen::random_weighted(&mut rng, &g, &[-1, 1], 0.0, 0..=0);
                let signed_k: Vec<i64> = (0..n)
                    .map(|i| {
                        let (pos, neg) = signed.signed_degrees(i);
                        rng.random_range(-(neg as i64)..=pos as i64 + 1)
                    })
                    .collect();
                let signed = signed.with_thresholds(signed_k).unwrap();
                let integer = gen::random_weighted(&mut rng, &g, &[-2, -1, 1, 2], 0.0, -4..=4);
                let looped = gen::random_weighted(&mut rng, &g, &[-2, -1, 1, 2], 0.5, -4..=4);
                (g, k, signed, integer, looped)
            })
            .collect();
        const KINDS: [&str; 7] = [
            "bipartite",
            "one-step symmetric",
            "symmetric",
            "inverted",
            "signed",
            "unit weights",
            "self-loops",
        ];
        let outcomes = map_ordered(
            &samples,
            self.cfg.workers,
            |(g, k, signed, integer, looped)| {
                let profiles = || all_profiles(g.n());
                let plain = |e: &ExpansionResult<ThresholdInstance>| {
                    commutation_check(
                        |a| step(g, k, a).unwrap(),
                        |b| step(&e.instance.graph, &e.instance.thresholds, b).unwrap(),
                        &e.lift,
                        profiles(),
                    )
                };
                let mut out: Vec<Option<CommutationReport>> = Vec::new();
                out.push(Some(plain(&bipartite_expansion(g, k).unwrap())));
                out.push(match one_step_symmetric_expansion(g, k) {
                    Ok(e) => Some(plain(&e)),
                    Err(Error::AlreadySymmetric) => None,
                    Err(e) => panic!("one-step expansion failed: {e}"),
                });
                let full = symmetric_expansion(g, k).unwrap();
                assert!(is_symmetric_model(
                    &full.instance.graph,
                    &full.instance.thresholds
                ));
                out.push(Some(plain(&full)));
                let inv = inverted_to_primary(g, k).unwrap();
                out.push(Some(commutation_check(
                    |a| step_inverted(g, k, a).unwrap(),
                    |b| step(&inv.instance.graph, &inv.instance.thresholds, b).unwrap(),
                    &inv.lift,
                    profiles(),
                )));
                let sp = signed_to_primary(signed).unwrap();
                out.push(Some(commutation_check(
                    |a| step_weighted(signed, a).unwrap(),
                    |b| step(&sp.instance.graph, &sp.instance.thresholds, b).unwrap(),
                    &sp.lift,
                    profiles(),
                )));
                out.push(
                    match integer_weights_to_unit(integer, DEFAULT_BLOWUP_GUARD) {
                        Ok(e) => Some(commutation_check(
                            |a| step_weighted(integer, a).unwrap(),
                            |b| step_weighted(&e.instance, b).unwrap(),
                            &e.lift,
                            profiles(),
                        )),
                        Err(Error::GuardExceeded { .. }) => None,
                        Err(e) => panic!("weight blow-up failed: {e}"),
                    },
                );
                let nl = remove_self_loops(looped).unwrap();
                out.push(Some(commutation_check(
                    |a| step_weighted(looped, a).unwrap(),
                    |b| step_weighted(&nl.instance, b).unwrap(),
                    &nl.lift,
                    profiles(),
                )));
                out
            },
        );
        let mut checked = [0usize; 7];
        let mut skipped = [0usize; 7];
        let mut failures = Vec::new();
        for (sample, reports) in outcomes.iter().enumerate() {
            for (kind, r) in reports.iter().enumerate() {
                match r {
                    None => skipped[kind] += 1,
                    Some(r) => {
                        checked[kind] += r.checked;
                        if let Some(c) = &r.counterexample {
                            failures
                                .push(format!("{} sample {sample} at {}", KINDS[kind], c.profile));
                        }
                    }
                }
            }
        }
        let mut detail = format!("{COMMUTATION_SAMPLES} instances;");
        for (i, kind) in KINDS.iter().enumerate() {
            let _ = write!(detail, " {kind} {}", checked[i]);
            if skipped[i] > 0 {
                let _ = write!(detail, " ({} skipped)", skipped[i]);
            }
            detail.push(if i + 1 < KINDS.len() { ',' } else { ';' });
        }
        let _ = write!(
            detail,
            " {} violations{}",
            failures.len(),
            witnesses(&failures)
        );
        ("expansion commutation", failures.is_empty(), detail)
    }

    fn fixed_point_identity(&self) -> (&'static str, bool, String) {
        let graphs: Vec<Graph> = (1..=6)
            .flat_map(gen::connected_graphs)
            .filter(Graph::is_bipartite)
            .collect();
        let parts = map_ordered(&graphs, self.cfg.workers, |g| {
            let mut count = 0u64;
            let mut bad = Vec::new();
            for k in gen::all_thresholds(g) {
                count += 1;
                if let Err(e) = bipartite_cycle_identity(g, &k) {
                    bad.push(format!("{:?} k={:?}: {e}", g.edges(), k.as_slice()));
                }
            }
            (count, bad)
        });
        let instances: u64 = parts.iter().map(|p| p.0).sum();
        let bad: Vec<String> = parts.into_iter().flat_map(|p| p.1).collect();
        let detail = format!(
            "{} bipartite graphs, {instances} instances, {} violations{}",
            graphs.len(),
            bad.len(),
            witnesses(&bad)
        );
        ("cycle count identity", bad.is_empty(), detail)
    }

    fn fix_reduction(&self) -> (&'static str, bool, String) {
        let mut rng = self.rng(6);
        let mut formulas =
            vec![Formula::from_signed(Variant::Monotone2Dnf, 2, &[vec![1, 2]]).unwrap()];
        formulas.extend(
            (0..FIX_SAMPLES).map(|_| gen::random_monotone(&mut rng, Variant::Monotone2Dnf, 4, 2)),
        );
        let results = map_ordered(
            &formulas,
            self.cfg.workers,
            |f| -> Result<(u64, u64, bool), Error> {
                let gadget = fix_reduction(f)?;
                let fixed = count_fixed_points_backtracking(
                    &gadget.instance.graph,
                    &gadget.instance.thresholds,
                )?;
                let sat = count_sat(f)?;
                let nsat = (1u64 << f.num_vars()) - sat;
                let recovered = recover_sat_count(fixed, f.num_vars())?;
                let ok = fixed == sat + 8 * (nsat - 1) + 1
                    && (recovered.sat, recovered.nsat) == (sat, nsat);
                Ok((fixed, sat, ok))
            },
        );
        let mut bad = Vec::new();
        for (f, r) in formulas.iter().zip(&results) {
            match r {
                Ok((_, _, true)) => {}
                Ok((fixed, sat, false)) => bad.push(format!("{f}: F={fixed} #sat={sat}")),
                Err(e) => bad.push(format!("{f}: {e}")),
            }
        }
        let anchor = matches!(results[0], Ok((18, 1, true)));
        let detail = format!(
            "anchor (x1 & x2) F={} #sat=1 {}; {FIX_SAMPLES} random formulas, {} mismatches{}",
            results[0].as_ref().map_or(0, |r| r.0),
            if anchor { "ok" } else { "WRONG" },
            bad.len(),
            witnesses(&bad)
        );
        ("#FIX reduction", anchor && bad.is_empty(), detail)
    }

    fn pred_reduction(&self) -> (&'static str, bool, String) {
        let mut rng = self.rng(7);
        let formulas: Vec<Formula> = (0..PRED_SAMPLES)
            .map(|_| gen::random_cnf3(&mut rng, 4, 3))
            .collect();
        let results = map_ordered(
            &formulas,
            self.cfg.workers,
            |f| -> Result<(bool, bool), Error> {
                let p = pred_reduction(f)?;
                let reachable = is_reachable(
                    &p.gadget.instance.graph,
                    &p.gadget.instance.thresholds,
                    &p.target,
                    DEFAULT_GUARD_N,
                )?;
                Ok((reachable, count_sat(f)? > 0))
            },
        );
        let satisfiable = results
            .iter()
            .filter(|r| matches!(r, Ok((_, true))))
            .count();
        let bad: Vec<String> = formulas
            .iter()
            .zip(&results)
            .filter_map(|(f, r)| match r {
                Ok((a, b)) if a == b => None,
                Ok((a, b)) => Some(format!("{f}: reachable={a} satisfiable={b}")),
                Err(e) => Some(format!("{f}: {e}")),
            })
            .collect();
        let detail = format!(
            "{PRED_SAMPLES} formulas ({satisfiable} satisfiable), {} mismatches{}",
            bad.len(),
            witnesses(&bad)
        );
        ("PRED reduction", bad.is_empty(), detail)
    }

    fn reachable_pred(&self) -> (&'static str, bool, String) {
        let f = Formula::from_signed(Variant::Monotone2Cnf, 2, &[vec![1, 2]]).unwrap();
        match reachable_pred_reduction(&f, DEFAULT_GUARD_N) {
            Ok(r) => {
                let notice = r.discrepancy().unwrap_or_else(|| "no discrepancy".into());
                let passed = r.measured == 9 && r.claimed == 3 && r.discrepancy().is_some();
                (
                    "#reachable-PRED",
                    passed,
                    format!(
                        "(x1 | x2): measured {} vs claimed {}; {notice}",
                        r.measured, r.claimed
                    ),
                )
            }
            Err(e) => ("#reachable-PRED", false, e.to_string()),
        }
    }

    fn resilience(&self) -> (&'static str, bool, String) {
        let mut cases = Vec::new();
        for n in 2..=6 {
            cases.extend((1..=n).map(|k| (Family::Star, n, k)));
            cases.extend([1, 2].map(|k| (Family::Path, n, k)));
        }
        for n in 2..=5 {
            cases.extend((1..=n).map(|k| (Family::Complete, n, k)));
        }
        for n in 4usize..=6 {
            cases.extend([1, 2, n.div_ceil(2)].map(|k| (Family::Cycle, n, k)));
        }
        let mut compared = 0;
        let mut no_formula = 0;
        let mut bad = Vec::new();
        for &(family, n, k) in &cases {
            let g = family.graph(n).unwrap();
            let mu = match parallel::resilience(&g, k, self.cfg.workers) {
                Ok(r) => r.mu,
                Err(e) => {
                    bad.push(format!("{} n={n} K={k}: {e}", family.name()));
                    continue;
                }
            };
            if !bounds_report(&g, mu).holds {
                bad.push(format!(
                    "{} n={n} K={k}: mu={mu} outside [1, n/2]",
                    family.name()
                ));
            }
            match resilience_closed_form(family, n, k) {
                Ok(formula) => {
                    compared += 1;
                    if formula != mu {
                        bad.push(format!(
                            "{} n={n} K={k}: brute {mu} vs formula {formula}",
                            family.name()
                        ));
                    }
                }
                Err(_) => no_formula += 1,
            }
        }
        let mut rng = self.rng(9);
        let graphs: Vec<Graph> = (0..GREEDY_SAMPLES)
            .map(|_| {
                let n = rng.random_range(2..=8);
                {
                    let p = rng.random_range(0.0..1.0);
                    gen::random_graph(&mut rng, n, p)
                }
            })
            .collect();
        let greedy = map_ordered(&graphs, self.cfg.workers, |g| {
            let q = greedy_upper_bound_q(g);
            let recovers = check_recovery(g, &q, g.n())
                .map(|c| c.recovers)
                .unwrap_or(false);
            recovers && q.l1() <= Rational::new(g.n() as i64, 2)
        });
        let greedy_bad = greedy.iter().filter(|ok| !**ok).count();
        let detail = format!(
            "{compared} closed-form comparisons, {no_formula} cases outside the formula range (bounds only), \
             {} mismatches{}; greedy {}/{GREEDY_SAMPLES} recover within n/2",
            bad.len(),
            witnesses(&bad),
            GREEDY_SAMPLES - greedy_bad
        );
        ("resilience", bad.is_empty() && greedy_bad == 0, detail)
    }

    fn extremal(&self) -> (&'static str, bool, String) {
        let run = |n, kind| -> Result<(u64, u64), Error> {
            let (g, k): (Graph, ThresholdDist) = build_extremal_cycle_instance(n, kind)?;
            let c = enumerate_limits(&g, &k, DEFAULT_GUARD_N)?;
            Ok((c.fixed_points, c.two_cycles))
        };
        match (run(5, ExtremalKind::Min), run(6, ExtremalKind::Max)) {
            (Ok((f5, c5)), Ok((f6, c6))) => {
                let passed = f5 == 2 && c5 == 0 && f6 >= 4 && c6 >= 3;
                (
                    "extremal instances",
                    passed,
                    format!("(5,min) F={f5} 2-cycles={c5}; (6,max) F={f6} 2-cycles={c6}"),
                )
            }
            (a, b) => ("extremal instances", false, format!("{a:?} {b:?}")),
        }
    }
}

fn witnesses(list: &[String]) -> String {
    if list.is_empty() {
        String::new()
    } else {
        format!(" (e.g. {})", list.join("; "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cheap_criteria_pass() {
        let suite = Suite::new(SuiteConfig {
            seed: 0,
            workers: 2,
        });
        for id in [8, 10] {
            let r = suite.run(id);
            assert!(r.passed, "{r}");
        }
    }
}

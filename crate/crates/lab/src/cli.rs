//! The `threshold-lab` command line.
//!
//! Exit codes: 0 success, 2 invalid input, 3 guard exceeded or timeout,
//! 4 invariant violation.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use threshold_core::dynamics::{
    default_guard, limit_cycle, step, step_weighted, Action, MaskRule, WeightedMaskRule,
};
use threshold_core::enumeration::{
    count_fixed_points_with_abort, is_reachable, LimitCensus, DEFAULT_GUARD_N,
};
use threshold_core::expansions::{
    bipartite_expansion, integer_weights_to_unit, inverted_to_primary,
    one_step_symmetric_expansion, remove_constant_node, remove_self_loops, signed_to_primary,
    symmetric_expansion_with, PivotOrder, DEFAULT_BLOWUP_GUARD, DEFAULT_NODE_GUARD,
};
use threshold_core::reductions::{
    count_sat, coverage_count, fix_reduction, pred_reduction, reachable_pred_reduction,
    recover_sat_count, Formula,
};
use threshold_core::resilience::{
    check_recovery, greedy_upper_bound_q, resilience_closed_form, Family,
};
use threshold_core::{ActionProfile, Graph};

use crate::error::{LabError, LabResult};
use crate::formats::{
    self, instance_file, rational, weighted_file, GadgetFile, InstanceFile, Loaded,
};
use crate::parallel;
use crate::suites::{Suite, SuiteConfig, CRITERIA};

#[derive(Debug, Parser)]
#[command(
    name = "threshold-lab",
    version,
    about = "Synchronous threshold dynamics on graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, clap::Args)]
struct Common {
    /// Largest node count for exhaustive 2^n scans.
    #[arg(long = "guard-n", env = "THRESHOLD_LAB_GUARD_N", default_value_t = DEFAULT_GUARD_N)]
    guard_n: usize,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long)]
    workers: Option<usize>,
}

impl Common {
    fn workers(&self) -> usize {
        self.workers
            .unwrap_or_else(parallel::default_workers)
            .max(1)
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Iterate from one profile to its limit cycle.
    Simulate {
        #[arg(long)]
        input: PathBuf,
        /// Start profile as a B/W string.
        #[arg(long)]
        initial: String,
        /// Cap on distinct states visited.
        #[arg(long = "max-states")]
        max_states: Option<usize>,
    },
    /// Count fixed points and 2-cycles over all profiles.
    Enumerate {
        #[arg(long)]
        input: PathBuf,
        /// Also list up to this many fixed points and 2-cycles.
        #[arg(long, default_value_t = 0)]
        witnesses: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Apply a simulation-preserving transform.
    Expand {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        kind: ExpandKind,
        /// Node to pin, for `remove-node`.
        #[arg(long)]
        node: Option<usize>,
        /// Action of the pinned node.
        #[arg(long, default_value = "W")]
        pin: String,
        /// Cap on the size of the produced instance.
        #[arg(long = "max-states")]
        max_states: Option<usize>,
    },
    /// Build a counting gadget from a formula.
    Reduce {
        #[arg(long)]
        formula: PathBuf,
        #[arg(long)]
        kind: ReduceKind,
        /// Count on the gadget and compare with the brute-force oracle.
        #[arg(long)]
        verify: bool,
        /// Give up counting after this many seconds.
        #[arg(long)]
        timeout: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Cheapest recovering type allocation.
    Resilience {
        #[arg(long)]
        input: Option<PathBuf>,
        /// Use a named family instead of an input file.
        #[arg(long)]
        family: Option<String>,
        #[arg(long)]
        size: Option<usize>,
        #[arg(long = "K", default_value_t = 1)]
        k: usize,
        #[arg(long, default_value = "brute")]
        mode: ResilienceMode,
        #[command(flatten)]
        common: Common,
    },
    /// Run the verification suites and print a pass/fail table.
    Verify {
        /// Run only these criteria (1 to 10).
        #[arg(long = "criterion")]
        criteria: Vec<u8>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ExpandKind {
    Bipartite,
    Symmetric,
    OneStepSymmetric,
    Inverted,
    Signed,
    UnitWeights,
    DropSelfLoops,
    RemoveNode,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ReduceKind {
    Fix,
    Pred,
    ReachablePred,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ResilienceMode {
    Brute,
    Greedy,
    ClosedForm,
}

/// Parse `args`, run, print to stdout/stderr and return the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let mut out = std::io::stdout().lock();
    match execute(cli.command, &mut out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("threshold-lab: {e}");
            e.exit_code()
        }
    }
}

fn emit<T: Serialize>(out: &mut impl Write, value: &T) -> LabResult<()> {
    serde_json::to_writer(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn execute(command: Command, out: &mut impl Write) -> LabResult<i32> {
    match command {
        Command::Simulate {
            input,
            initial,
            max_states,
        } => simulate(&formats::read_instance(&input)?, &initial, max_states, out)?,
        Command::Enumerate {
            input,
            witnesses,
            common,
        } => enumerate(&formats::read_instance(&input)?, witnesses, &common, out)?,
        Command::Expand {
            input,
            kind,
            node,
            pin,
            max_states,
        } => expand(
            &formats::read_instance(&input)?,
            kind,
            node,
            &pin,
            max_states,
            out,
        )?,
        Command::Reduce {
            formula,
            kind,
            verify,
            timeout,
            common,
        } => {
            return reduce(
                &formats::read_formula(&formula)?,
                kind,
                verify,
                timeout,
                &common,
                out,
            )
        }
        Command::Resilience {
            input,
            family,
            size,
            k,
            mode,
            common,
        } => resilience(input, family, size, k, mode, &common, out)?,
        Command::Verify {
            criteria,
            seed,
            common,
        } => return verify(&criteria, seed, &common, out),
    }
    Ok(0)
}

#[derive(Serialize)]
struct SimulateOut {
    initial: String,
    transient: usize,
    period: usize,
    cycle: Vec<String>,
    trajectory_length: usize,
}

fn simulate(
    inst: &Loaded,
    initial: &str,
    max_states: Option<usize>,
    out: &mut impl Write,
) -> LabResult<()> {
    let a = formats::parse_profile(initial, inst.n())?;
    let guard = max_states.unwrap_or_else(|| default_guard(&inst.graph));
    let report = if inst.is_weighted() {
        let w = inst.weighted()?;
        limit_cycle(
            |x: &ActionProfile| step_weighted(&w, x).expect("lengths match"),
            a.clone(),
            guard,
        )?
    } else {
        let k = inst.threshold_dist()?;
        limit_cycle(
            |x: &ActionProfile| step(&inst.graph, &k, x).expect("lengths match"),
            a.clone(),
            guard,
        )?
    };
    emit(
        out,
        &SimulateOut {
            initial: a.to_string(),
            transient: report.transient,
            period: report.period(),
            cycle: report.cycle.iter().map(ToString::to_string).collect(),
            trajectory_length: report.trajectory_length,
        },
    )
}

#[derive(Serialize)]
struct CensusOut {
    fixed_points: u64,
    two_cycles: u64,
    cycle_classes: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    fixed_point_list: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    two_cycle_list: Option<Vec<[String; 2]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lists_complete: Option<bool>,
}

impl CensusOut {
    fn new(c: &LimitCensus, witnesses: bool) -> Self {
        Self {
            fixed_points: c.fixed_points,
            two_cycles: c.two_cycles,
            cycle_classes: c.cycle_classes(),
            fixed_point_list: witnesses
                .then(|| c.fixed_point_list.iter().map(ToString::to_string).collect()),
            two_cycle_list: witnesses.then(|| {
                c.two_cycle_list
                    .iter()
                    .map(|(a, b)| [a.to_string(), b.to_string()])
                    .collect()
            }),
            lists_complete: witnesses.then(|| c.lists_complete()),
        }
    }
}

fn enumerate(
    inst: &Loaded,
    witnesses: usize,
    common: &Common,
    out: &mut impl Write,
) -> LabResult<()> {
    let workers = common.workers();
    let census = if inst.is_weighted() {
        let rule = WeightedMaskRule::new(&inst.weighted()?)?;
        parallel::census(&rule, common.guard_n, workers, witnesses)?
    } else {
        threshold_core::enumeration::check_scan_guard(inst.n(), common.guard_n)?;
        let rule = MaskRule::new(&inst.graph, &inst.threshold_dist()?)?;
        parallel::census(&rule, common.guard_n, workers, witnesses)?
    };
    emit(out, &CensusOut::new(&census, witnesses > 0))
}

#[derive(Serialize)]
struct ComponentOut {
    #[serde(flatten)]
    instance: InstanceFile,
    relabel: Vec<usize>,
}

#[derive(Serialize)]
struct ComponentsOut {
    components: Vec<ComponentOut>,
}

fn expand(
    inst: &Loaded,
    kind: ExpandKind,
    node: Option<usize>,
    pin: &str,
    max_states: Option<usize>,
    out: &mut impl Write,
) -> LabResult<()> {
    let plain =
        |e: threshold_core::expansions::ExpansionResult<threshold_core::ThresholdInstance>| {
            instance_file(&e.instance.graph, &e.instance.thresholds, Some(&e.node_map))
        };
    let file = match kind {
        ExpandKind::Bipartite => plain(bipartite_expansion(&inst.graph, &inst.threshold_dist()?)?),
        ExpandKind::Inverted => plain(inverted_to_primary(&inst.graph, &inst.threshold_dist()?)?),
        ExpandKind::OneStepSymmetric => plain(one_step_symmetric_expansion(
            &inst.graph,
            &inst.threshold_dist()?,
        )?),
        ExpandKind::Symmetric => plain(symmetric_expansion_with(
            &inst.graph,
            &inst.threshold_dist()?,
            PivotOrder::Lowest,
            max_states.unwrap_or(DEFAULT_NODE_GUARD),
        )?),
        ExpandKind::Signed => plain(signed_to_primary(&inst.weighted()?)?),
        ExpandKind::UnitWeights => {
            let e = integer_weights_to_unit(
                &inst.weighted()?,
                max_states.unwrap_or(DEFAULT_BLOWUP_GUARD),
            )?;
            weighted_file(&e.instance, Some(&e.node_map))
        }
        ExpandKind::DropSelfLoops => {
            let e = remove_self_loops(&inst.weighted()?)?;
            weighted_file(&e.instance, Some(&e.node_map))
        }
        ExpandKind::RemoveNode => {
            let node = node.ok_or_else(|| LabError::Invalid("remove-node needs --node".into()))?;
            let action = match pin {
                "B" | "b" => Action::B,
                "W" | "w" => Action::W,
                other => {
                    return Err(LabError::Invalid(format!(
                        "--pin must be B or W, not {other:?}"
                    )))
                }
            };
            let parts = remove_constant_node(&inst.graph, &inst.threshold_dist()?, node, action)?;
            let components = parts
                .into_iter()
                .map(|p| ComponentOut {
                    instance: instance_file(&p.graph, &p.thresholds, None),
                    relabel: p.relabel,
                })
                .collect();
            return emit(out, &ComponentsOut { components });
        }
    };
    emit(out, &file)
}

#[derive(Serialize)]
struct FixCheck {
    fixed_points: u64,
    recovered_sat: u64,
    recovered_nsat: u64,
    oracle_sat: u64,
    verdict: &'static str,
}

#[derive(Serialize)]
struct PredCheck {
    reachable: bool,
    satisfiable: bool,
    verdict: &'static str,
}

#[derive(Serialize)]
struct ReachableCheck {
    coverage_count: u64,
    predicted: u64,
    verdict: &'static str,
}

#[derive(Serialize)]
struct ReduceOut<C: Serialize> {
    #[serde(flatten)]
    gadget: GadgetFile,
    #[serde(skip_serializing_if = "Option::is_none")]
    target: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    claimed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    measured: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    discrepancy: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    verify: Option<C>,
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "MATCH"
    } else {
        "MISMATCH"
    }
}

fn reduce(
    f: &Formula,
    kind: ReduceKind,
    verify: bool,
    timeout: Option<u64>,
    common: &Common,
    out: &mut impl Write,
) -> LabResult<i32> {
    let mut ok = true;
    match kind {
        ReduceKind::Fix => {
            let gadget = fix_reduction(f)?;
            let check = if verify {
                let deadline = timeout.map(|s| Instant::now() + Duration::from_secs(s));
                let mut abort = || deadline.is_some_and(|d| Instant::now() >= d);
                let fixed = count_fixed_points_with_abort(
                    &gadget.instance.graph,
                    &gadget.instance.thresholds,
                    &mut abort,
                )?;
                let rec = recover_sat_count(fixed, f.num_vars())?;
                let oracle = count_sat(f)?;
                ok = rec.sat == oracle;
                Some(FixCheck {
                    fixed_points: fixed,
                    recovered_sat: rec.sat,
                    recovered_nsat: rec.nsat,
                    oracle_sat: oracle,
                    verdict: verdict(ok),
                })
            } else {
                None
            };
            let o = ReduceOut {
                gadget: GadgetFile::from(&gadget),
                target: None,
                claimed: None,
                measured: None,
                discrepancy: None,
                verify: check,
            };
            emit(out, &o)?;
        }
        ReduceKind::Pred => {
            let p = pred_reduction(f)?;
            let check = if verify {
                let g = &p.gadget.instance;
                let reachable = is_reachable(&g.graph, &g.thresholds, &p.target, common.guard_n)?;
                let satisfiable = count_sat(f)? > 0;
                ok = reachable == satisfiable;
                Some(PredCheck {
                    reachable,
                    satisfiable,
                    verdict: verdict(ok),
                })
            } else {
                None
            };
            let o = ReduceOut {
                gadget: GadgetFile::from(&p.gadget),
                target: Some(p.target.to_string()),
                claimed: None,
                measured: None,
                discrepancy: None,
                verify: check,
            };
            emit(out, &o)?;
        }
        ReduceKind::ReachablePred => {
            let r = reachable_pred_reduction(f, common.guard_n)?;
            if let Some(notice) = r.discrepancy() {
                eprintln!("threshold-lab: note: {notice}");
            }
            let check = if verify {
                let coverage = coverage_count(f)?;
                let predicted = if f.clauses().is_empty() {
                    r.measured
                } else {
                    r.claimed * coverage
                };
                ok = predicted == r.measured;
                Some(ReachableCheck {
                    coverage_count: coverage,
                    predicted,
                    verdict: verdict(ok),
                })
            } else {
                None
            };
            let o = ReduceOut {
                gadget: GadgetFile::from(&r.gadget),
                target: Some(r.target.to_string()),
                claimed: Some(r.claimed),
                measured: Some(r.measured),
                discrepancy: r.discrepancy(),
                verify: check,
            };
            emit(out, &o)?;
        }
    }
    Ok(if ok { 0 } else { 4 })
}

#[derive(Serialize)]
struct BruteOut {
    mode: &'static str,
    #[serde(rename = "K")]
    k: usize,
    mu: [i64; 2],
    witness_q: Vec<[i64; 2]>,
    evaluations: u64,
}

#[derive(Serialize)]
struct GreedyOut {
    mode: &'static str,
    #[serde(rename = "K")]
    k: usize,
    q: Vec<[i64; 2]>,
    l1: [i64; 2],
    recovers: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    failing_seed: Option<String>,
}

#[derive(Serialize)]
struct ClosedFormOut {
    mode: &'static str,
    family: &'static str,
    n: usize,
    #[serde(rename = "K")]
    k: usize,
    mu: [i64; 2],
}

fn resilience(
    input: Option<PathBuf>,
    family: Option<String>,
    size: Option<usize>,
    k: usize,
    mode: ResilienceMode,
    common: &Common,
    out: &mut impl Write,
) -> LabResult<()> {
    let family = family.map(|f| Family::parse(&f)).transpose()?;
    let graph = || -> LabResult<Graph> {
        match (&input, family, size) {
            (Some(path), None, _) => Ok(formats::read_instance(path)?.graph),
            (None, Some(fam), Some(n)) => Ok(fam.graph(n)?),
            _ => Err(LabError::Invalid(
                "give either --input or --family with --size".into(),
            )),
        }
    };
    match mode {
        ResilienceMode::Brute => {
            let r = parallel::resilience(&graph()?, k, common.workers())?;
            emit(
                out,
                &BruteOut {
                    mode: "brute",
                    k,
                    mu: rational(r.mu),
                    witness_q: r
                        .witness_q
                        .as_slice()
                        .iter()
                        .map(|&q| rational(q))
                        .collect(),
                    evaluations: r.evaluations,
                },
            )
        }
        ResilienceMode::Greedy => {
            let g = graph()?;
            let q = greedy_upper_bound_q(&g);
            let check = check_recovery(&g, &q, k)?;
            emit(
                out,
                &GreedyOut {
                    mode: "greedy",
                    k,
                    q: q.as_slice().iter().map(|&x| rational(x)).collect(),
                    l1: rational(q.l1()),
                    recovers: check.recovers,
                    failing_seed: check.failing_seed.map(|a| a.to_string()),
                },
            )
        }
        ResilienceMode::ClosedForm => {
            let (Some(fam), Some(n)) = (family, size) else {
                return Err(LabError::Invalid(
                    "closed-form mode needs --family and --size".into(),
                ));
            };
            let mu = resilience_closed_form(fam, n, k)?;
            emit(
                out,
                &ClosedFormOut {
                    mode: "closed-form",
                    family: fam.name(),
                    n,
                    k,
                    mu: rational(mu),
                },
            )
        }
    }
}

fn verify(criteria: &[u8], seed: u64, common: &Common, out: &mut impl Write) -> LabResult<i32> {
    if let Some(bad) = criteria.iter().find(|&&c| c == 0 || c > CRITERIA) {
        return Err(LabError::Invalid(format!("no criterion {bad}")));
    }
    let suite = Suite::new(SuiteConfig {
        seed,
        workers: common.workers(),
    });
    let ids: Vec<u8> = if criteria.is_empty() {
        (1..=CRITERIA).collect()
    } else {
        criteria.to_vec()
    };
    let mut failed = 0;
    for id in ids {
        let r = suite.run(id);
        failed += usize::from(!r.passed);
        writeln!(out, "{r}")?;
    }
    Ok(if failed == 0 { 0 } else { 4 })
}

mod common;

use common::*;
use proptest::prelude::*;
use threshold_core::dynamics::{
    conflict_links, default_guard, limit_cycle, step, step_inverted, step_restricted, step_types,
    step_weighted, two_step_case, WeightedGraph,
};
use threshold_core::expansions::{is_symmetric_model, symmetric_expansion};
use threshold_core::graph::{two_partition, types_to_thresholds};
use threshold_core::{ActionProfile, Graph, Rational, ThresholdDist, TypeDist};

fn arb_types(g: impl Strategy<Value = Graph>) -> impl Strategy<Value = (Graph, TypeDist)> {
    g.prop_flat_map(|g| {
        let q: Vec<_> = (0..g.n())
            .map(|_| (1i64..=12).prop_flat_map(|den| (0..=den, Just(den))))
            .collect();
        (Just(g), q)
    })
    .prop_map(|(g, q)| {
        let t = TypeDist::new(q.into_iter().map(|(a, b)| Rational::new(a, b)).collect()).unwrap();
        (g, t)
    })
}

fn bits(n: usize, a: u64) -> ActionProfile {
    ActionProfile::from_bits(n, a)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn step_matches_edge_scan((g, k) in with_thresholds(arb_graph(2, 9))) {
        let n = g.n();
        for a in 0..1u64 << n {
            prop_assert_eq!(step(&g, &k, &bits(n, a)).unwrap().to_bits(), naive_step(n, g.edges(), k.as_slice(), a));
        }
    }

    #[test]
    fn type_rule_equals_threshold_rule((g, q) in arb_types(arb_graph(2, 8))) {
        let k = types_to_thresholds(&g, &q).unwrap();
        prop_assert!(k.as_slice().iter().all(|&k| k >= 1));
        for a in 0..1u64 << g.n() {
            let a = bits(g.n(), a);
            prop_assert_eq!(step_types(&g, &q, &a).unwrap(), step(&g, &k, &a).unwrap());
        }
        let white = ActionProfile::all_white(g.n());
        prop_assert_eq!(step_types(&g, &q, &white).unwrap(), white);
    }

    #[test]
    fn inverted_is_complement((g, k) in with_thresholds(arb_graph(2, 8))) {
        for a in 0..1u64 << g.n() {
            let a = bits(g.n(), a);
            let s = step(&g, &k, &a).unwrap();
            let t = step_inverted(&g, &k, &a).unwrap();
            prop_assert_eq!(s.hamming(&t), g.n());
        }
    }

    #[test]
    fn limit_cycles_have_period_at_most_two((g, k) in with_thresholds(arb_graph(2, 8))) {
        let n = g.n();
        let bound = 14 * g.edge_count() + 6 * n;
        for a in 0..1u64 << n {
            let start = bits(n, a);
            let r = limit_cycle(|x| step(&g, &k, x).unwrap(), start.clone(), default_guard(&g)).unwrap();
            let (transient, period) = naive_orbit(|x| naive_step(n, g.edges(), k.as_slice(), x), a);
            prop_assert_eq!((r.transient, r.period()), (transient, period));
            prop_assert!(period <= 2);
            prop_assert!(transient <= bound);
            let r = limit_cycle(|x| step_inverted(&g, &k, x).unwrap(), start, default_guard(&g)).unwrap();
            prop_assert!(r.period() <= 2);
        }
    }

    #[test]
    fn linear_bound_on_trees((g, k) in with_thresholds(arb_tree(2, 8))) {
        let n = g.n();
        for a in 0..1u64 << n {
            let (transient, _) = naive_orbit(|x| naive_step(n, g.edges(), k.as_slice(), x), a);
            prop_assert!(transient <= n);
        }
    }

    #[test]
    fn decoupling((g, k) in with_thresholds(arb_bipartite(2, 8))) {
        let parts = two_partition(&g).unwrap();
        for a in 0..1u64 << g.n() {
            let a = bits(g.n(), a);
            let b = step_restricted(&g, &k, &a, &parts.p_odd).unwrap();
            let c = step_restricted(&g, &k, &b, &parts.p_even).unwrap();
            let once = step(&g, &k, &a).unwrap();
            let twice = step(&g, &k, &once).unwrap();
            for &i in &parts.p_odd {
                prop_assert_eq!(c.get(i), once.get(i));
            }
            for &i in &parts.p_even {
                prop_assert_eq!(c.get(i), twice.get(i));
            }
            prop_assert_eq!(c == a, once == a);
        }
    }

    #[test]
    fn restricted_steps_lower_conflicts(
        (g, k) in with_thresholds(arb_tree(2, 5)),
        seed in any::<u64>(),
    ) {
        let sym = symmetric_expansion(&g, &k).unwrap().instance;
        prop_assert!(is_symmetric_model(&sym.graph, &sym.thresholds));
        let parts = two_partition(&sym.graph).unwrap();
        let n = sym.graph.n();
        let mut state = seed;
        for _ in 0..16 {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let a = ActionProfile::from_bools(&(0..n).map(|i| (state.rotate_left(i as u32 % 64) ^ (i as u64 * 0x9e37)) & 1 == 1).collect::<Vec<_>>());
            for part in [&parts.p_odd, &parts.p_even] {
                let b = step_restricted(&sym.graph, &sym.thresholds, &a, part).unwrap();
                let before = conflict_links(&sym.graph, &a).unwrap();
                let after = conflict_links(&sym.graph, &b).unwrap();
                prop_assert_eq!(b != a, after < before);
            }
        }
    }

    #[test]
    fn weighted_cycles_have_period_at_most_two(
        n in 2usize..=6,
        seed in any::<[u8; 32]>(),
    ) {
        let w = random_weighted(n, &seed);
        let bound = 14 * w.graph().edge_count() + 6 * n;
        for a in 0..1u64 << n {
            let r = limit_cycle(|x| step_weighted(&w, x).unwrap(), bits(n, a), 10 * bound + 4).unwrap();
            prop_assert!(r.period() <= 2, "period {} from {}", r.period(), bits(n, a));
        }
    }
}

// Small deterministic generator so the weighted strategy stays flat.
fn random_weighted(n: usize, seed: &[u8; 32]) -> WeightedGraph {
    let mut i = 0;
    let mut next = |m: usize| {
        let v = seed[i % 32] as usize ^ (i / 32);
        i += 1;
        v % m
    };
    let weights = [-2, -1, 1, 2];
    let mut edges = Vec::new();
    for v in 1..n {
        let u = next(v);
        edges.push((u, v, weights[next(4)]));
    }
    for u in 0..n {
        for v in u + 1..n {
            if next(3) == 0
                && !edges
                    .iter()
                    .any(|&(a, b, _)| (a.min(b), a.max(b)) == (u, v))
            {
                edges.push((u, v, weights[next(4)]));
            }
        }
    }
    let mut loops = Vec::new();
    for i in 0..n {
        if next(3) == 0 {
            loops.push((i, weights[next(4)]));
        }
    }
    let k = (0..n).map(|_| next(9) as i64 - 4).collect();
    WeightedGraph::from_parts(n, &edges, &loops, k).unwrap()
}

#[test]
fn unit_weights_match_plain_step() {
    let g = cycle(5);
    let k = ThresholdDist::new(vec![1, 2, 0, 1, 3]);
    let w =
        WeightedGraph::unit(g.clone(), k.as_slice().iter().map(|&k| k as i64).collect()).unwrap();
    for a in 0..32 {
        assert_eq!(
            step_weighted(&w, &bits(5, a)).unwrap(),
            step(&g, &k, &bits(5, a)).unwrap()
        );
    }
}

#[test]
fn negative_edge_example() {
    let w = WeightedGraph::from_parts(2, &[(0, 1, -1)], &[], vec![0, 0]).unwrap();
    let a: ActionProfile = "BW".parse().unwrap();
    assert_eq!(step_weighted(&w, &a).unwrap(), a);
}

#[test]
fn two_step_table_on_cycles() {
    for n in 4..=8 {
        let g = cycle(n);
        for kb in 0..1u32 << n {
            let k = ThresholdDist::new((0..n).map(|i| 1 + (kb >> i & 1)).collect());
            for a in 0..1u64 << n {
                let twice = naive_step(
                    n,
                    g.edges(),
                    k.as_slice(),
                    naive_step(n, g.edges(), k.as_slice(), a),
                );
                for i in 0..n {
                    let (p, s) = ((i + n - 1) % n, (i + 1) % n);
                    let (pp, ss) = ((i + n - 2) % n, (i + 2) % n);
                    let case = two_step_case(k[p], k[i], k[s]).unwrap();
                    let bit = |j: usize| a >> j & 1 == 1;
                    assert_eq!(
                        case.evaluate(bit(pp), bit(i), bit(ss)),
                        twice >> i & 1 == 1,
                        "n={n} k={k:?} a={a:b} i={i}"
                    );
                }
            }
        }
    }
}

#[test]
fn linear_bound_on_even_cycles() {
    for n in [4, 6, 8] {
        let g = cycle(n);
        let max_k = 3u32;
        for kb in 0..max_k.pow(n as u32) {
            let k: Vec<u32> = (0..n)
                .map(|i| kb / max_k.pow(i as u32) % max_k + 1)
                .collect();
            for a in 0..1u64 << n {
                let (transient, _) = naive_orbit(|x| naive_step(n, g.edges(), &k, x), a);
                assert!(transient <= n, "n={n} k={k:?} a={a:b}");
            }
        }
    }
}

#[test]
fn restricted_example() {
    let g = cycle(4);
    let k = ThresholdDist::uniform(4, 1);
    let a: ActionProfile = "BWWW".parse().unwrap();
    assert_eq!(
        step_restricted(&g, &k, &a, &[1, 3]).unwrap().to_string(),
        "BBWB"
    );
    assert_eq!(step_restricted(&g, &k, &a, &[]).unwrap(), a);
    assert_eq!(
        step_restricted(&g, &k, &a, &[0, 1, 2, 3]).unwrap(),
        step(&g, &k, &a).unwrap()
    );
}

mod common;

use common::*;
use proptest::prelude::*;
use threshold_core::dynamics::{step, MaskRule};
use threshold_core::enumeration::{
    bipartite_cycle_identity, build_extremal_cycle_instance, count_fixed_points_backtracking,
    count_predecessors, enumerate_limits, ExtremalKind, StateSpace, DEFAULT_GUARD_N,
};
use threshold_core::ActionProfile;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn census_matches_scan((g, k) in with_thresholds(arb_graph(2, 9))) {
        let n = g.n();
        let f = |a: u64| naive_step(n, g.edges(), k.as_slice(), a);
        let fixed = (0..1u64 << n).filter(|&a| f(a) == a).count() as u64;
        let pairs = (0..1u64 << n).filter(|&a| f(a) > a && f(f(a)) == a).count() as u64;
        let census = enumerate_limits(&g, &k, DEFAULT_GUARD_N).unwrap();
        prop_assert_eq!((census.fixed_points, census.two_cycles), (fixed, pairs));
        prop_assert_eq!(census.cycle_classes(), fixed + pairs);
        for a in &census.fixed_point_list {
            prop_assert_eq!(&step(&g, &k, a).unwrap(), a);
        }
        for (a, b) in &census.two_cycle_list {
            prop_assert!(a < b);
            prop_assert_eq!(&step(&g, &k, a).unwrap(), b);
            prop_assert_eq!(&step(&g, &k, b).unwrap(), a);
        }
        prop_assert_eq!(count_fixed_points_backtracking(&g, &k).unwrap(), fixed);
    }

    #[test]
    fn backtracking_matches_scan_on_larger_graphs((g, k) in with_thresholds(arb_graph(8, 14))) {
        prop_assert_eq!(count_fixed_points_backtracking(&g, &k).unwrap(), naive_fixed_points(&g, &k));
    }

    #[test]
    fn state_space_matches_iteration((g, k) in with_thresholds(arb_graph(2, 8))) {
        let n = g.n();
        let space = StateSpace::of(&MaskRule::new(&g, &k).unwrap()).unwrap();
        prop_assert!(space.max_period() <= 2);
        for a in 0..1u64 << n {
            let (t, p) = naive_orbit(|x| naive_step(n, g.edges(), k.as_slice(), x), a);
            prop_assert_eq!((space.transient(a as u32) as usize, space.period(a as u32) as usize), (t, p));
        }
    }

    #[test]
    fn cycle_count_identity_on_bipartite((g, k) in with_thresholds(arb_bipartite(2, 10))) {
        let r = bipartite_cycle_identity(&g, &k).unwrap();
        let f = naive_fixed_points(&g, &k);
        prop_assert_eq!(r.fixed_points, f);
        prop_assert_eq!(r.cycle_classes, f * (f.saturating_sub(1)) / 2 + f);
    }

    #[test]
    fn predecessor_counts((g, k) in with_thresholds(arb_graph(2, 8)), target in any::<u64>()) {
        let n = g.n();
        let target = target & ((1 << n) - 1);
        let expected = (0..1u64 << n).filter(|&a| naive_step(n, g.edges(), k.as_slice(), a) == target).count() as u64;
        let got = count_predecessors(&g, &k, &ActionProfile::from_bits(n, target), DEFAULT_GUARD_N).unwrap();
        prop_assert_eq!(got, expected);
    }
}

#[test]
fn four_cycle_census() {
    let c = enumerate_limits(
        &cycle(4),
        &threshold_core::ThresholdDist::uniform(4, 1),
        DEFAULT_GUARD_N,
    )
    .unwrap();
    assert_eq!((c.fixed_points, c.two_cycles, c.cycle_classes()), (2, 1, 3));
}

#[test]
fn extremal_instances() {
    let (g, k) = build_extremal_cycle_instance(5, ExtremalKind::Min).unwrap();
    let c = enumerate_limits(&g, &k, DEFAULT_GUARD_N).unwrap();
    assert_eq!((c.fixed_points, c.two_cycles), (2, 0));
    let (g, k) = build_extremal_cycle_instance(6, ExtremalKind::Max).unwrap();
    let c = enumerate_limits(&g, &k, DEFAULT_GUARD_N).unwrap();
    assert!(c.fixed_points >= 4 && c.two_cycles >= 3, "{c:?}");
}

mod common;

use common::arb_graph;
use eqkit::algebraic::Angle;
use eqkit::equiangular::{lines_from_graph, validate};
use eqkit::graph::generators::{random_bounded_degree, random_gnp, repeat, star};
use eqkit::graph::{Graph, VertexSet};
use eqkit::linalg::DEFAULT_RANK_TOL;
use eqkit::switching::{
    associated_graph, bounded_degree_switch, c_profile, clique_bound_check, independent_set_search,
    is_clique, max_clique, profile_histogram, switch, switch_graph, SwitchParams,
};
use proptest::prelude::*;

fn arb_subset(n: usize) -> impl Strategy<Value = VertexSet> {
    proptest::collection::vec(any::<bool>(), n).prop_map(|bits| {
        bits.iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| i)
            .collect()
    })
}

fn brute_clique(g: &Graph) -> usize {
    let n = g.n();
    (0..1u32 << n)
        .filter(|&m| {
            let vs: Vec<usize> = (0..n).filter(|&i| m >> i & 1 == 1).collect();
            vs.iter()
                .all(|&a| vs.iter().all(|&b| a == b || g.has_edge(a, b)))
        })
        .map(|m| m.count_ones() as usize)
        .max()
        .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn graph_switching_laws((g, s) in arb_graph(12).prop_flat_map(|g| { let n = g.n(); (Just(g), arb_subset(n)) })) {
        let once = switch_graph(&g, &s);
        prop_assert_eq!(switch_graph(&once, &s), g.clone());
        prop_assert_eq!(switch_graph(&g, &s.complement(g.n())), once.clone());
        for u in 0..g.n() {
            for v in 0..g.n() {
                if u != v {
                    let across = s.contains(u) != s.contains(v);
                    prop_assert_eq!(once.has_edge(u, v), g.has_edge(u, v) != across);
                }
            }
        }
    }

    #[test]
    fn vector_switching_matches_graph_switching(
        (g, s) in arb_graph(9).prop_flat_map(|g| { let n = g.n(); (Just(g), arb_subset(n)) }),
        den in prop_oneof![Just(3i64), Just(5)],
    ) {
        let angle = Angle::rational(1, den).unwrap();
        let config = lines_from_graph(&g, &angle, DEFAULT_RANK_TOL);
        prop_assume!(config.is_ok());
        let config = config.unwrap();
        let switched = switch(&config, &s);
        prop_assert!(validate(&switched, &angle, DEFAULT_RANK_TOL).unwrap().valid);
        prop_assert_eq!(associated_graph(&switched, &angle).unwrap(), switch_graph(&g, &s));
        let c = clique_bound_check(&config, &angle).unwrap();
        prop_assert!(c.holds);
        prop_assert!(c.max_clique as u64 <= c.bound);
    }

    #[test]
    fn profile_classes_partition_the_outside((g, x) in arb_graph(11).prop_flat_map(|g| { let n = g.n(); (Just(g), arb_subset(n)) })) {
        let hist = profile_histogram(&g, &x);
        prop_assert_eq!(hist.values().sum::<usize>(), g.n() - x.len());
        for (a, &count) in &hist {
            let a: VertexSet = a.iter().copied().collect();
            prop_assert_eq!(c_profile(&g, &x, &a).unwrap().len(), count);
        }
    }

    #[test]
    fn clique_matches_brute_force(g in arb_graph(12)) {
        let c = max_clique(&g);
        prop_assert!(is_clique(&g, &c));
        prop_assert_eq!(c.len(), brute_clique(&g));
    }

    #[test]
    fn independent_search_is_independent(n in 1usize..60, p in 0.0f64..0.5, seed in any::<u64>()) {
        let g = random_gnp(n, p, seed);
        let s = independent_set_search(&g, seed);
        prop_assert!(g.is_independent(&s));
        // Caro-Wei: some independent set has size at least sum 1/(deg+1); greedy min-degree attains it
        let cw: f64 = g.degrees().iter().map(|&d| 1.0 / (d as f64 + 1.0)).sum();
        prop_assert!(s.len() as f64 + 1e-9 >= cw.floor());
        prop_assert_eq!(independent_set_search(&g, seed), s);
    }
}

#[test]
fn switched_configurations_are_consistent() {
    let third = Angle::rational(1, 3).unwrap();
    let fifth = Angle::rational(1, 5).unwrap();
    let matching = repeat(&Graph::from_edges(2, [(0, 1)]).unwrap(), 20);
    let cases = [
        (&third, matching),
        (&fifth, star(3).unwrap()),
        (&fifth, star(30).unwrap()),
    ];
    for (angle, g) in &cases {
        let config = lines_from_graph(g, angle, DEFAULT_RANK_TOL).unwrap();
        for seed in 0..3 {
            let r =
                bounded_degree_switch(&config, angle, SwitchParams::defaults(angle), seed).unwrap();
            assert!(
                validate(&r.switched_config, angle, DEFAULT_RANK_TOL)
                    .unwrap()
                    .valid
            );
            let before = associated_graph(&config, angle).unwrap();
            let after = associated_graph(&r.switched_config, angle).unwrap();
            assert_eq!(after, switch_graph(&before, &r.negated));
            assert_eq!(after, r.associated_graph);
            assert_eq!(after.max_degree(), r.max_degree);
            assert_eq!(before.max_degree(), r.max_degree_before);
            let negated: VertexSet = r
                .signs
                .iter()
                .enumerate()
                .filter(|(_, &s)| s < 0)
                .map(|(i, _)| i)
                .collect();
            assert_eq!(negated, r.negated);
            assert!(r.within_target);
        }
    }
}

#[test]
fn sparse_inputs_stay_within_target() {
    let angle = Angle::rational(1, 5).unwrap();
    for seed in 0..5 {
        let g = random_bounded_degree(24, 2, 0, seed).unwrap();
        let Ok(config) = lines_from_graph(&g, &angle, DEFAULT_RANK_TOL) else {
            continue;
        };
        let r =
            bounded_degree_switch(&config, &angle, SwitchParams::defaults(&angle), seed).unwrap();
        assert!(r.max_degree as u64 <= r.params.delta_target);
    }
}

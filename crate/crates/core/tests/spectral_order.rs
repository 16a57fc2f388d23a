use eqkit::algebraic::{parse_algebraic, AlgebraicNumber};
use eqkit::graph::generators::complete;
use eqkit::graph::{delete_vertices, VertexSet};
use eqkit::linalg::spectral_radius;
use eqkit::spectral_order::canon::canonical_key;
use eqkit::spectral_order::{count_connected, enumerate_connected, exact_radius_eq, k_order};

/// Unpruned oracle: scan every connected class in order.
fn k_order_exhaustive(lambda: &AlgebraicNumber, kmax: usize) -> Option<usize> {
    (1..=kmax).find(|&n| {
        enumerate_connected(n)
            .unwrap()
            .iter()
            .any(|g| exact_radius_eq(g, lambda).unwrap())
    })
}

#[test]
fn connected_class_counts_through_eight() {
    let counts: Vec<usize> = (1..=8).map(|n| count_connected(n).unwrap()).collect();
    assert_eq!(counts, vec![1, 1, 2, 6, 21, 112, 853, 11117]);
}

#[test]
fn integer_orders_are_complete_graphs() {
    for m in 1..=7i64 {
        let r = k_order(&AlgebraicNumber::from_integer(m), 8).unwrap();
        assert_eq!(r.k, Some(m as usize + 1));
        let w = r.witness.unwrap();
        assert_eq!(
            canonical_key(&w),
            canonical_key(&complete(m as usize + 1).unwrap())
        );
        assert!(r.certificate.unwrap().holds);
    }
}

#[test]
fn pruned_search_matches_exhaustive_oracle() {
    for s in [
        "1",
        "2",
        "sqrt(2)",
        "(1+sqrt(5))/2",
        "sqrt(3)",
        "3/2",
        "1+sqrt(2)",
    ] {
        let lam = parse_algebraic(s).unwrap();
        assert_eq!(
            k_order(&lam, 7).unwrap().k,
            k_order_exhaustive(&lam, 7),
            "lambda = {s}"
        );
    }
}

#[test]
fn witnesses_are_strictly_monotone_under_deletion() {
    for s in ["sqrt(2)", "(1+sqrt(5))/2", "sqrt(3)", "2", "1+sqrt(2)"] {
        let r = k_order(&parse_algebraic(s).unwrap(), 8).unwrap();
        let w = r.witness.expect("witness");
        assert!(w.is_connected());
        let top = spectral_radius(&w).unwrap();
        for v in 0..w.n() {
            let h = delete_vertices(&w, &VertexSet::from(vec![v]))
                .unwrap()
                .graph;
            assert!(spectral_radius(&h).unwrap() < top - 1e-9);
        }
    }
}

#[test]
fn smaller_graphs_fail_certificate() {
    for s in ["sqrt(2)", "(1+sqrt(5))/2", "3"] {
        let lam = parse_algebraic(s).unwrap();
        let k = k_order(&lam, 8).unwrap().k.unwrap();
        for n in 1..k {
            for g in enumerate_connected(n).unwrap().iter().take(10) {
                assert!(!exact_radius_eq(g, &lam).unwrap());
            }
        }
    }
}

#[test]
fn three_halves_not_found_through_eight() {
    let r = k_order(&parse_algebraic("3/2").unwrap(), 8).unwrap();
    assert_eq!(r.k, None);
    assert_eq!(r.search_bound, 8);
}

mod common;

use common::{arb_graph, graph_from_mask, oracle_eigenvalues};
use eqkit::graph::generators::{cycle, paley, petersen};
use eqkit::graph::Graph;
use eqkit::linalg::{
    adjacency_eigenvalues, charpoly_exact, gram, psd_rank, spectral_radius, sturm_count,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use proptest::prelude::*;

fn triangles(g: &Graph) -> i64 {
    let n = g.n();
    let mut t = 0;
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if g.has_edge(i, j) && g.has_edge(j, k) && g.has_edge(i, k) {
                    t += 1;
                }
            }
        }
    }
    t
}

/// Coefficients (low degree first) of `prod_i (x - e_i)`.
fn expand(roots: &[f64]) -> Vec<f64> {
    let mut c = vec![1.0];
    for &r in roots {
        let mut next = vec![0.0; c.len() + 1];
        for (k, &a) in c.iter().enumerate() {
            next[k + 1] += a;
            next[k] -= r * a;
        }
        c = next;
    }
    c
}

fn check_charpoly(g: &Graph) {
    let p = charpoly_exact(g).unwrap();
    let n = g.n();
    let c: Vec<i64> = p.coeffs().iter().map(|x| x.to_i64().unwrap()).collect();
    assert_eq!(c.len(), n + 1);
    assert_eq!(c[n], 1);
    if n >= 2 {
        assert_eq!(c[n - 1], 0);
        assert_eq!(c[n - 2], -(g.edge_count() as i64));
    }
    if n >= 3 {
        assert_eq!(c[n - 3], -2 * triangles(g));
    }
    let values = adjacency_eigenvalues(g).unwrap();
    let oracle = oracle_eigenvalues(g);
    for (a, b) in values.iter().zip(&oracle) {
        assert!((a - b).abs() < 1e-9, "{a} vs {b}");
    }
    for (k, (e, &x)) in expand(&values).iter().zip(&c).enumerate() {
        assert!(
            (e - x as f64).abs() < 1e-6 * (1.0 + (x as f64).abs()),
            "coefficient {k}: {e} vs {x}"
        );
    }
    // every eigenvalue is counted by a Sturm sequence on a small rational window
    let sq = p.squarefree_part();
    for &e in &values {
        let lo = BigRational::new(
            BigInt::from(((e - 1e-6) * 1e9).floor() as i64),
            BigInt::from(1_000_000_000),
        );
        let hi = BigRational::new(
            BigInt::from(((e + 1e-6) * 1e9).ceil() as i64),
            BigInt::from(1_000_000_000),
        );
        assert!(sturm_count(&sq, &lo, &hi).unwrap() >= 1);
    }
}

#[test]
fn charpoly_matches_spectrum_for_every_graph_through_six_vertices() {
    for n in 1..=6 {
        let pairs = n * (n - 1) / 2;
        for mask in 0..1u64 << pairs {
            check_charpoly(&graph_from_mask(n, mask));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn charpoly_matches_spectrum_up_to_eight(g in arb_graph(8)) {
        check_charpoly(&g);
    }

    #[test]
    fn spectrum_invariants(g in arb_graph(12)) {
        let v = adjacency_eigenvalues(&g).unwrap();
        let sum: f64 = v.iter().sum();
        let sq: f64 = v.iter().map(|x| x * x).sum();
        prop_assert!(sum.abs() < 1e-9);
        prop_assert!((sq - 2.0 * g.edge_count() as f64).abs() < 1e-8);
        prop_assert!(v.windows(2).all(|w| w[0] >= w[1]));
        let rho = spectral_radius(&g).unwrap();
        prop_assert!((rho - v[0]).abs() < 1e-9);
        prop_assert!(v[0] + 1e-9 >= v[v.len() - 1].abs());
        let avg = 2.0 * g.edge_count() as f64 / g.n() as f64;
        prop_assert!(avg <= rho + 1e-9 && rho <= g.max_degree() as f64 + 1e-9);
    }

    #[test]
    fn gram_rank_at_most_dimension(rows in proptest::collection::vec(proptest::collection::vec(-3i32..=3, 3), 1..10)) {
        let vectors: Vec<Vec<f64>> = rows.iter().map(|r| r.iter().map(|&x| f64::from(x)).collect()).collect();
        let r = psd_rank(&gram(&vectors), 1e-9).unwrap();
        prop_assert!(r.is_psd);
        prop_assert!(r.rank <= 3);
    }
}

#[test]
fn known_spectra() {
    let p = adjacency_eigenvalues(&petersen()).unwrap();
    let expect = [3.0, 1.0, 1.0, 1.0, 1.0, 1.0, -2.0, -2.0, -2.0, -2.0];
    assert!(p.iter().zip(expect).all(|(a, b)| (a - b).abs() < 1e-9));

    let c = adjacency_eigenvalues(&cycle(12).unwrap()).unwrap();
    let mut expect: Vec<f64> = (0..12)
        .map(|k| 2.0 * (std::f64::consts::PI * 2.0 * k as f64 / 12.0).cos())
        .collect();
    expect.sort_by(|a, b| b.partial_cmp(a).unwrap());
    assert!(c.iter().zip(&expect).all(|(a, b)| (a - b).abs() < 1e-9));

    let q = adjacency_eigenvalues(&paley(13).unwrap()).unwrap();
    let r = (13f64.sqrt() - 1.0) / 2.0;
    assert!((q[0] - 6.0).abs() < 1e-9);
    assert_eq!(q.iter().filter(|x| (**x - r).abs() < 1e-9).count(), 6);
    assert_eq!(q.iter().filter(|x| (**x + r + 1.0).abs() < 1e-9).count(), 6);
}

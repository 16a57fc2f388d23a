//! Standard graph families.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Graph, GraphError};

fn invalid(msg: impl Into<String>) -> GraphError {
    GraphError::InvalidParameter(msg.into())
}

/// Complete graph `K_k`.
pub fn complete(k: usize) -> Result<Graph, GraphError> {
    Graph::from_edges(k, (0..k).flat_map(|u| (u + 1..k).map(move |v| (u, v))))
}

/// Path `P_n` on vertices `0 - 1 - ... - (n-1)`.
pub fn path(n: usize) -> Result<Graph, GraphError> {
    Graph::from_edges(n, (1..n).map(|v| (v - 1, v)))
}

/// Cycle `C_n`, `n >= 3`.
pub fn cycle(n: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(invalid(format!("cycle needs at least 3 vertices, got {n}")));
    }
    Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n)))
}

/// Star `K_{1,leaves}` with center 0.
pub fn star(leaves: usize) -> Result<Graph, GraphError> {
    Graph::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v)))
}

pub fn empty(n: usize) -> Graph {
    Graph::empty(n)
}

pub fn disjoint_union(a: &Graph, b: &Graph) -> Graph {
    a.disjoint_union(b)
}

/// `copies` disjoint copies of `h`.
pub fn repeat(h: &Graph, copies: usize) -> Graph {
    (0..copies).fold(Graph::empty(0), |acc, _| acc.disjoint_union(h))
}

/// The Petersen graph: outer 5-cycle 0..5, inner pentagram 5..10, spokes i ~ i+5.
pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
        edges.push((i, i + 5));
    }
    Graph::from_edges(10, edges).expect("static edge list")
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Paley graph on `Z_p`: `x ~ y` iff `x - y` is a nonzero square mod `p`.
pub fn paley(p: usize) -> Result<Graph, GraphError> {
    if !is_prime(p as u64) || p % 4 != 1 {
        return Err(invalid(format!(
            "Paley graph needs a prime p = 1 (mod 4), got {p}"
        )));
    }
    let mut residue = vec![false; p];
    for x in 1..p {
        residue[x * x % p] = true;
    }
    Graph::from_edges(
        p,
        (0..p)
            .flat_map(|x| (x + 1..p).map(move |y| (x, y)))
            .filter(|&(x, y)| residue[(y - x) % p]),
    )
}

type Mat2 = [u64; 4];

fn mat_mul(a: &Mat2, b: &Mat2, p: u64) -> Mat2 {
    [
        (a[0] * b[0] + a[1] * b[2]) % p,
        (a[0] * b[1] + a[1] * b[3]) % p,
        (a[2] * b[0] + a[3] * b[2]) % p,
        (a[2] * b[1] + a[3] * b[3]) % p,
    ]
}

/// Representative of `{M, -M}`: the one whose first nonzero entry is at most `(p-1)/2`.
fn canonical_psl(m: Mat2, p: u64) -> Mat2 {
    let first = m
        .iter()
        .copied()
        .find(|&x| x != 0)
        .expect("determinant one");
    if first <= (p - 1) / 2 {
        m
    } else {
        m.map(|x| (p - x) % p)
    }
}

/// Cayley graph of `PSL(2, p)` with generators the images of `[[1,1],[0,1]]` and
/// `[[1,0],[1,1]]` and their inverses; `g ~ g s` for each generator `s`.
///
/// Connected, 4-regular, `p(p^2 - 1)/2` vertices. Vertex 0 is the identity.
pub fn psl2_cayley(p: usize) -> Result<Graph, GraphError> {
    if p < 5 || !is_prime(p as u64) {
        return Err(invalid(format!(
            "PSL(2,p) Cayley graph needs a prime p >= 5, got {p}"
        )));
    }
    let q = p as u64;
    let gens: [Mat2; 4] = [
        [1, 1, 0, 1],
        [1, q - 1, 0, 1],
        [1, 0, 1, 1],
        [1, 0, q - 1, 1],
    ];
    let identity: Mat2 = [1, 0, 0, 1];
    let mut index: HashMap<Mat2, usize> = HashMap::new();
    let mut elems = vec![identity];
    index.insert(identity, 0);
    let mut adj: Vec<Vec<usize>> = Vec::new();
    let mut i = 0;
    while i < elems.len() {
        let x = elems[i];
        let mut nbrs = Vec::with_capacity(4);
        for s in &gens {
            let y = canonical_psl(mat_mul(&x, s, q), q);
            let j = *index.entry(y).or_insert_with(|| {
                elems.push(y);
                elems.len() - 1
            });
            nbrs.push(j);
        }
        adj.push(nbrs);
        i += 1;
    }
    let n = elems.len();
    debug_assert_eq!(n, p * (p * p - 1) / 2);
    let mut g = Graph::empty(n);
    for (u, nbrs) in adj.iter().enumerate() {
        for &v in nbrs {
            g.add_edge(u, v)?;
        }
    }
    Ok(g)
}

/// Uniform-ish random `d`-regular graph on `n` vertices from the pairing model:
/// shuffle `n d` half-edges, pair them off, reject configurations with loops or
/// repeated edges.
pub fn random_regular(n: usize, d: usize, seed: u64) -> Result<Graph, GraphError> {
    const MAX_ATTEMPTS: usize = 10_000;
    if (n * d) % 2 == 1 || d >= n.max(1) {
        return Err(invalid(format!(
            "no simple {d}-regular graph on {n} vertices"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    'attempt: for _ in 0..MAX_ATTEMPTS {
        points.shuffle(&mut rng);
        let mut g = Graph::empty(n);
        for pair in points.chunks_exact(2) {
            let (u, v) = (pair[0], pair[1]);
            if u == v || g.has_edge(u, v) {
                continue 'attempt;
            }
            g.add_edge(u, v)?;
        }
        return Ok(g);
    }
    Err(invalid(format!(
        "pairing model rejected {MAX_ATTEMPTS} configurations for n={n}, d={d}"
    )))
}

/// Random connected graph on `n` vertices with maximum degree at most `max_degree`:
/// a random degree-capped spanning tree plus `extra_edges` attempted random chords.
pub fn random_bounded_degree(
    n: usize,
    max_degree: usize,
    extra_edges: usize,
    seed: u64,
) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(GraphError::Empty);
    }
    if n > 2 && max_degree < 2 {
        return Err(invalid(
            "a connected graph on more than 2 vertices needs max degree >= 2",
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut g = Graph::empty(n);
    for i in 1..n {
        let v = order[i];
        let open: Vec<usize> = order[..i]
            .iter()
            .copied()
            .filter(|&u| g.degree(u) < max_degree)
            .collect();
        // a path always leaves an open endpoint, so `open` is never empty
        let u = open[rng.gen_range(0..open.len())];
        g.add_edge(u, v)?;
    }
    for _ in 0..extra_edges {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u != v && !g.has_edge(u, v) && g.degree(u) < max_degree && g.degree(v) < max_degree {
            g.add_edge(u, v)?;
        }
    }
    Ok(g)
}

/// Erdős–Rényi `G(n, p)`.
pub fn random_gnp(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p.clamp(0.0, 1.0)) {
                g.add_edge(u, v).expect("in range");
            }
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_families() {
        assert_eq!(complete(4).unwrap().edge_count(), 6);
        let u = disjoint_union(&complete(3).unwrap(), &complete(3).unwrap());
        assert_eq!(u.n(), 6);
        assert_eq!(u.components().len(), 2);
        assert_eq!(star(5).unwrap().degree(0), 5);
        assert!(cycle(2).is_err());
        let p = petersen();
        assert_eq!(p.is_regular(), Some(3));
        assert_eq!(p.edge_count(), 15);
    }

    #[test]
    fn paley_five_is_pentagon() {
        // squares mod 5 are {1, 4}: x ~ x +- 1
        assert_eq!(paley(5).unwrap(), cycle(5).unwrap());
    }

    #[test]
    fn paley_thirteen_is_six_regular() {
        let g = paley(13).unwrap();
        assert_eq!(g.n(), 13);
        assert_eq!(g.is_regular(), Some(6));
    }

    #[test]
    fn paley_rejects_bad_primes() {
        assert!(paley(7).is_err());
        assert!(paley(9).is_err());
        assert!(paley(21).is_err());
    }

    /// Strongly regular with parameters (p, (p-1)/2, (p-5)/4, (p-1)/4), by
    /// counting common neighbors; also self-complementary via x -> n x with n a non-residue.
    #[test]
    fn paley_is_strongly_regular_and_self_complementary() {
        for p in [5usize, 13, 17, 29] {
            let g = paley(p).unwrap();
            let k = (p - 1) / 2;
            assert_eq!(g.is_regular(), Some(k));
            for u in 0..p {
                for v in u + 1..p {
                    let common = g.neighbors(u).filter(|&w| g.has_edge(v, w)).count();
                    let expect = if g.has_edge(u, v) {
                        (p - 5) / 4
                    } else {
                        (p - 1) / 4
                    };
                    assert_eq!(common, expect, "p={p} u={u} v={v}");
                }
            }
            let nonres = (1..p).find(|&x| !(1..p).any(|y| y * y % p == x)).unwrap();
            let perm: Vec<usize> = (0..p).map(|x| x * nonres % p).collect();
            let c = g.complement();
            for (x, y) in g.edges() {
                assert!(c.has_edge(perm[x], perm[y]));
            }
        }
    }

    #[test]
    fn psl2_sizes() {
        for p in [5usize, 7] {
            let g = psl2_cayley(p).unwrap();
            assert_eq!(g.n(), p * (p * p - 1) / 2);
            assert_eq!(g.is_regular(), Some(4));
            assert!(g.is_connected());
        }
        assert_eq!(psl2_cayley(5).unwrap().n(), 5 * 24 / 2);
        assert!(psl2_cayley(3).is_err());
        assert!(psl2_cayley(9).is_err());
    }

    #[test]
    fn psl2_sphere_profiles_agree() {
        let g = psl2_cayley(5).unwrap();
        let profile = |v: usize| {
            let d = g.distances_from(v).unwrap();
            let max = d.iter().flatten().max().copied().unwrap();
            (0..=max)
                .map(|r| d.iter().filter(|&&x| x == Some(r)).count())
                .collect::<Vec<_>>()
        };
        let p0 = profile(0);
        for v in 1..g.n() {
            assert_eq!(profile(v), p0);
        }
    }

    #[test]
    fn random_regular_contract() {
        let g = random_regular(20, 3, 1).unwrap();
        assert_eq!(g.n(), 20);
        assert_eq!(g.is_regular(), Some(3));
        assert_eq!(g, random_regular(20, 3, 1).unwrap());
        assert!(random_regular(5, 3, 1).is_err());
    }

    #[test]
    fn random_bounded_degree_contract() {
        for seed in 0..20 {
            let g = random_bounded_degree(40, 4, 30, seed).unwrap();
            assert!(g.is_connected());
            assert!(g.max_degree() <= 4);
        }
    }
}

//! Canonical forms for small graphs (at most [`MAX_CANON`] vertices).
//!
//! The key of a labeled graph is its upper triangle read column by column,
//! `(0,1), (0,2), (1,2), (0,3), ...`, most significant bit first, so the key
//! of the first `m` placed vertices is a prefix of the full key. The canonical
//! key is the minimum over all orderings that list colour-refinement classes
//! in their canonical order. Colours are isomorphism invariant, so the minimum
//! is too.

use crate::graph::Graph;

pub const MAX_CANON: usize = 11;

/// Bits in the key of an `n`-vertex graph.
pub const fn key_len(n: usize) -> u32 {
    (n * n.saturating_sub(1) / 2) as u32
}

/// Key of `g` under its own labeling.
pub fn labeled_key(g: &Graph) -> u64 {
    let n = g.n();
    let mut key = 0u64;
    for j in 1..n {
        for i in 0..j {
            key = (key << 1) | u64::from(g.has_edge(i, j));
        }
    }
    key
}

/// Inverse of [`labeled_key`].
pub fn graph_from_key(n: usize, key: u64) -> Graph {
    let len = key_len(n);
    let mut g = Graph::empty(n);
    let mut bit = len;
    for j in 1..n {
        for i in 0..j {
            bit -= 1;
            if key >> bit & 1 == 1 {
                g.add_edge(i, j).expect("indices in range");
            }
        }
    }
    g
}

/// Stable colour refinement: colour ids are ranks of sorted signatures, starting from degrees.
fn refine_colors(adj: &[u16]) -> Vec<usize> {
    let n = adj.len();
    let mut colors: Vec<usize> = adj.iter().map(|a| a.count_ones() as usize).collect();
    let mut classes = 0;
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = (0..n)
                    .filter(|&u| adj[v] >> u & 1 == 1)
                    .map(|u| colors[u])
                    .collect();
                nb.sort_unstable();
                (colors[v], nb)
            })
            .collect();
        let mut distinct = sigs.clone();
        distinct.sort();
        distinct.dedup();
        let next: Vec<usize> = sigs
            .iter()
            .map(|s| distinct.binary_search(s).expect("present"))
            .collect();
        if distinct.len() == classes {
            return next;
        }
        classes = distinct.len();
        colors = next;
    }
}

struct Search<'a> {
    n: usize,
    adj: &'a [u16],
    /// Vertices allowed at each position.
    slots: Vec<u16>,
    len: u32,
    best: u64,
    perm: [usize; MAX_CANON],
}

impl Search<'_> {
    fn dfs(&mut self, m: usize, used: u16, key: u64) {
        if m == self.n {
            self.best = self.best.min(key);
            return;
        }
        let bits = key_len(m + 1);
        let mut tried: u16 = 0;
        let mut cand = self.slots[m] & !used;
        while cand != 0 {
            let v = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            // interchangeable twins give identical subtrees
            if (0..self.n).any(|u| tried >> u & 1 == 1 && self.is_twin(u, v)) {
                continue;
            }
            tried |= 1 << v;
            let mut k = key;
            for i in 0..m {
                k = (k << 1) | u64::from(self.adj[self.perm[i]] >> v & 1);
            }
            if k > self.best >> (self.len - bits) {
                continue;
            }
            self.perm[m] = v;
            self.dfs(m + 1, used | 1 << v, k);
        }
    }

    fn is_twin(&self, u: usize, v: usize) -> bool {
        let mask = !((1u16 << u) | (1u16 << v));
        self.adj[u] & mask == self.adj[v] & mask
    }
}

/// Canonical key of `g`; equal keys iff isomorphic.
pub fn canonical_key(g: &Graph) -> u64 {
    let n = g.n();
    assert!(
        n <= MAX_CANON,
        "canonical forms support at most {MAX_CANON} vertices"
    );
    if n <= 1 {
        return 0;
    }
    let adj: Vec<u16> = (0..n)
        .map(|v| g.neighbors(v).fold(0u16, |a, u| a | 1 << u))
        .collect();
    let colors = refine_colors(&adj);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| colors[v]);
    let slots = order
        .iter()
        .map(|&v| {
            (0..n)
                .filter(|&u| colors[u] == colors[v])
                .fold(0u16, |a, u| a | 1 << u)
        })
        .collect();
    let mut s = Search {
        n,
        adj: &adj,
        slots,
        len: key_len(n),
        best: u64::MAX,
        perm: [0; MAX_CANON],
    };
    s.dfs(0, 0, 0);
    s.best
}

/// Canonical relabeling of `g`.
pub fn canonical_form(g: &Graph) -> Graph {
    graph_from_key(g.n(), canonical_key(g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::{complete, cycle, path, petersen, random_gnp};
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use std::collections::HashSet;

    /// Minimum labeled key over every permutation.
    fn brute_min_key(g: &Graph) -> u64 {
        let n = g.n();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut best = u64::MAX;
        permute(&mut perm, 0, &mut |p| {
            best = best.min(labeled_key(&g.relabel(p).unwrap()))
        });
        best
    }

    fn permute(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
        if k == p.len() {
            f(p);
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            permute(p, k + 1, f);
            p.swap(k, i);
        }
    }

    fn all_labeled(n: usize) -> impl Iterator<Item = Graph> {
        (0..1u64 << key_len(n)).map(move |k| graph_from_key(n, k))
    }

    #[test]
    fn key_round_trip() {
        let g = petersen();
        assert_eq!(graph_from_key(10, labeled_key(&g)), g);
        assert_eq!(labeled_key(&complete(3).unwrap()), 0b111);
        assert_eq!(labeled_key(&path(3).unwrap()), 0b101);
    }

    #[test]
    fn isomorphism_classes_match_brute_force() {
        // (n, all classes, connected classes)
        for (n, total, connected) in [(1, 1, 1), (2, 2, 1), (3, 4, 2), (4, 11, 6), (5, 34, 21)] {
            let mut ours = HashSet::new();
            let mut brute = HashSet::new();
            let mut conn = HashSet::new();
            for g in all_labeled(n) {
                let k = canonical_key(&g);
                ours.insert(k);
                brute.insert(brute_min_key(&g));
                if g.is_connected() {
                    conn.insert(k);
                }
            }
            assert_eq!(ours.len(), total, "n = {n}");
            assert_eq!(brute.len(), total, "n = {n}");
            assert_eq!(conn.len(), connected, "n = {n}");
        }
    }

    #[test]
    fn invariant_under_relabeling() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut graphs = vec![petersen(), cycle(9).unwrap(), complete(11).unwrap()];
        graphs.extend((0..60).map(|s| random_gnp(5 + (s as usize % 7), 0.45, s)));
        for g in graphs {
            let k = canonical_key(&g);
            for _ in 0..5 {
                let mut perm: Vec<usize> = (0..g.n()).collect();
                perm.shuffle(&mut rng);
                assert_eq!(canonical_key(&g.relabel(&perm).unwrap()), k);
            }
            assert_eq!(canonical_key(&canonical_form(&g)), k);
        }
    }

    #[test]
    fn distinguishes_cospectral_pair() {
        // C4 + K1 and the star K_{1,4} share a spectrum but are not isomorphic
        let a = crate::graph::generators::disjoint_union(&cycle(4).unwrap(), &Graph::empty(1));
        let b = crate::graph::generators::star(4).unwrap();
        assert_ne!(canonical_key(&a), canonical_key(&b));
    }
}

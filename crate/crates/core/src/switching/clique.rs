//! Exact maximum clique by branch and bound with a greedy colouring bound.

use crate::graph::{Graph, VertexSet};

type Bits = Vec<u64>;

fn bits_of(g: &Graph) -> Vec<Bits> {
    (0..g.n()).map(|v| g.row(v).to_vec()).collect()
}

fn count(b: &[u64]) -> usize {
    b.iter().map(|w| w.count_ones() as usize).sum()
}

fn first(b: &[u64]) -> Option<usize> {
    b.iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(i, &w)| i * 64 + w.trailing_zeros() as usize)
}

fn clear(b: &mut [u64], v: usize) {
    b[v / 64] &= !(1u64 << (v % 64));
}

fn and(a: &[u64], b: &[u64]) -> Bits {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

struct Search {
    adj: Vec<Bits>,
    best: Vec<usize>,
    current: Vec<usize>,
}

impl Search {
    /// Greedy colouring of `cand`; returns vertices in colour order with their colour numbers.
    fn colour(&self, cand: &[u64]) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(count(cand));
        let mut left = cand.to_vec();
        let mut colour = 0;
        while count(&left) > 0 {
            colour += 1;
            let mut q = left.clone();
            while let Some(v) = first(&q) {
                clear(&mut q, v);
                clear(&mut left, v);
                for (qw, aw) in q.iter_mut().zip(&self.adj[v]) {
                    *qw &= !aw;
                }
                out.push((v, colour));
            }
        }
        out
    }

    fn expand(&mut self, mut cand: Bits) {
        let order = self.colour(&cand);
        for &(v, c) in order.iter().rev() {
            if self.current.len() + c <= self.best.len() {
                return;
            }
            self.current.push(v);
            let next = and(&cand, &self.adj[v]);
            if count(&next) == 0 {
                if self.current.len() > self.best.len() {
                    self.best = self.current.clone();
                }
            } else {
                self.expand(next);
            }
            self.current.pop();
            clear(&mut cand, v);
        }
    }
}

/// A maximum clique of `g`.
pub fn max_clique(g: &Graph) -> VertexSet {
    let n = g.n();
    if n == 0 {
        return VertexSet::new();
    }
    let words = g.row(0).len();
    let mut all = vec![0u64; words];
    for v in 0..n {
        all[v / 64] |= 1 << (v % 64);
    }
    let mut s = Search {
        adj: bits_of(g),
        best: vec![0],
        current: Vec::new(),
    };
    s.expand(all);
    s.best.into_iter().collect()
}

/// `true` iff every pair in `set` is adjacent.
pub fn is_clique(g: &Graph, set: &VertexSet) -> bool {
    let v = set.as_slice();
    v.iter()
        .enumerate()
        .all(|(i, &a)| v[i + 1..].iter().all(|&b| g.has_edge(a, b)))
}

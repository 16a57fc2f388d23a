//! Simple undirected graphs on vertices `0..n`, stored as adjacency bit rows.
//!
//! Besides the [`Graph`] type this module carries the metric utilities the
//! multiplicity argument needs: radius-`r` neighborhoods, `r`-nets built by
//! spanning-tree peeling, and vertex deletion with a relabeling map back to
//! the host graph.

mod edgelist;
pub mod generators;
pub mod graph6;

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::SymMatrix;

pub use edgelist::EdgeList;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph has no vertices")]
    Empty,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("malformed graph6 input: {0}")]
    Graph6(String),
    #[error("malformed edge-list JSON: {0}")]
    EdgeList(String),
}

const WORD: usize = 64;

/// Simple undirected graph with vertex labels `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(WORD).max(1);
        Graph {
            n,
            words,
            bits: vec![0; n * words],
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    fn check(&self, v: usize) -> Result<(), GraphError> {
        if v < self.n {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange {
                vertex: v,
                n: self.n,
            })
        }
    }

    /// Adds the edge `uv`. Adding an existing edge is a no-op.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        self.check(u)?;
        self.check(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.bits[u * self.words + v / WORD] |= 1 << (v % WORD);
        self.bits[v * self.words + u / WORD] |= 1 << (u % WORD);
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        self.check(u)?;
        self.check(v)?;
        self.bits[u * self.words + v / WORD] &= !(1 << (v % WORD));
        self.bits[v * self.words + u / WORD] &= !(1 << (u % WORD));
        Ok(())
    }

    /// Flips adjacency of `u` and `v` (`u != v`).
    pub fn toggle_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        if self.has_edge(u, v) {
            self.remove_edge(u, v)
        } else {
            self.add_edge(u, v)
        }
    }

    /// Number of vertices.
    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && (self.bits[u * self.words + v / WORD] >> (v % WORD)) & 1 == 1
    }

    /// Adjacency bit row of `v`; bit `u % 64` of word `u / 64` is set iff `uv` is an edge.
    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.bits[v * self.words..(v + 1) * self.words]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(v).iter().enumerate().flat_map(|(w, &word)| {
            let mut word = word;
            std::iter::from_fn(move || {
                if word == 0 {
                    None
                } else {
                    let b = word.trailing_zeros() as usize;
                    word &= word - 1;
                    Some(w * WORD + b)
                }
            })
        })
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.bits
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|u| {
                self.neighbors(u)
                    .filter(move |&v| v > u)
                    .map(move |v| (u, v))
            })
            .collect()
    }

    /// Number of neighbors of `v` inside `set`.
    pub fn degree_into(&self, v: usize, set: &VertexSet) -> usize {
        set.iter().filter(|&u| self.has_edge(v, u)).count()
    }

    pub fn adjacency_matrix(&self) -> SymMatrix {
        SymMatrix::from_fn(self.n, |i, j| if self.has_edge(i, j) { 1.0 } else { 0.0 })
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    g.bits[u * g.words + v / WORD] |= 1 << (v % WORD);
                    g.bits[v * g.words + u / WORD] |= 1 << (u % WORD);
                }
            }
        }
        g
    }

    /// Induced subgraph on `vertices` (in the given order).
    pub fn induced(&self, vertices: &[usize]) -> Result<Subgraph, GraphError> {
        for &v in vertices {
            self.check(v)?;
        }
        let mut g = Graph::empty(vertices.len());
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j)?;
                }
            }
        }
        Ok(Subgraph {
            graph: g,
            labels: vertices.to_vec(),
        })
    }

    /// BFS distances from `source`; `None` for unreachable vertices.
    pub fn distances_from(&self, source: usize) -> Result<Vec<Option<usize>>, GraphError> {
        self.check(source)?;
        let mut dist = vec![None; self.n];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap_or(0);
            for w in self.neighbors(u) {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        Ok(dist)
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for w in self.neighbors(u) {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Connected and nonempty.
    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.components().len() == 1
    }

    /// Diameter of a connected graph; `None` when disconnected or empty.
    pub fn diameter(&self) -> Option<usize> {
        if !self.is_connected() {
            return None;
        }
        (0..self.n)
            .map(|v| {
                self.distances_from(v)
                    .ok()
                    .and_then(|d| d.into_iter().flatten().max())
                    .unwrap_or(0)
            })
            .max()
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let mut g = Graph::empty(self.n + other.n);
        for (u, v) in self.edges() {
            g.add_edge(u, v).expect("in range");
        }
        for (u, v) in other.edges() {
            g.add_edge(u + self.n, v + self.n).expect("in range");
        }
        g
    }

    /// Graph with vertex `perm[i]` of `self` renamed to `i`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph, GraphError> {
        if perm.len() != self.n {
            return Err(GraphError::InvalidParameter(format!(
                "permutation has length {}, graph has {} vertices",
                perm.len(),
                self.n
            )));
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            self.check(p)?;
            if std::mem::replace(&mut seen[p], true) {
                return Err(GraphError::InvalidParameter(format!(
                    "vertex {p} repeated in permutation"
                )));
            }
        }
        Ok(self.induced(perm)?.graph)
    }

    pub fn is_independent(&self, set: &VertexSet) -> bool {
        let s = set.as_slice();
        s.iter()
            .enumerate()
            .all(|(i, &u)| s[i + 1..].iter().all(|&v| !self.has_edge(u, v)))
    }

    pub fn is_regular(&self) -> Option<usize> {
        let d = self.degrees();
        match d.first() {
            Some(&d0) if d.iter().all(|&x| x == d0) => Some(d0),
            None => Some(0),
            _ => None,
        }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges())
            .finish()
    }
}

/// Sorted, duplicate-free set of vertex labels.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn insert(&mut self, v: usize) -> bool {
        match self.0.binary_search(&v) {
            Ok(_) => false,
            Err(i) => {
                self.0.insert(i, v);
                true
            }
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        self.iter().chain(other.iter()).collect()
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        self.iter().filter(|&v| !other.contains(v)).collect()
    }

    pub fn symmetric_difference(&self, other: &VertexSet) -> VertexSet {
        self.difference(other).union(&other.difference(self))
    }

    /// Complement within `0..n`.
    pub fn complement(&self, n: usize) -> VertexSet {
        (0..n).filter(|&v| !self.contains(v)).collect()
    }

    pub fn max(&self) -> Option<usize> {
        self.0.last().copied()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut v: Vec<usize> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }
}

impl From<Vec<usize>> for VertexSet {
    fn from(v: Vec<usize>) -> Self {
        v.into_iter().collect()
    }
}

/// An induced subgraph together with the host label of each of its vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgraph {
    pub graph: Graph,
    /// `labels[i]` is the host vertex that local vertex `i` came from.
    pub labels: Vec<usize>,
}

impl Subgraph {
    pub fn local_of(&self, host: usize) -> Option<usize> {
        self.labels.iter().position(|&h| h == host)
    }

    pub fn host_set(&self) -> VertexSet {
        self.labels.iter().copied().collect()
    }
}

/// `G_r(v)`: the subgraph induced by vertices at distance at most `r` from `v`.
///
/// Local vertices are listed in increasing host label.
pub fn neighborhood(g: &Graph, v: usize, r: usize) -> Result<Subgraph, GraphError> {
    let dist = g.distances_from(v)?;
    let ball: Vec<usize> = (0..g.n())
        .filter(|&u| matches!(dist[u], Some(d) if d <= r))
        .collect();
    g.induced(&ball)
}

/// Induced subgraph on `V(G) \ S`.
pub fn delete_vertices(g: &Graph, s: &VertexSet) -> Result<Subgraph, GraphError> {
    if let Some(m) = s.max() {
        g.check(m)?;
    }
    let keep: Vec<usize> = (0..g.n()).filter(|&v| !s.contains(v)).collect();
    g.induced(&keep)
}

/// An `r`-net of size at most `ceil(n / (r + 1))` for a connected graph.
///
/// Works on a BFS spanning tree rooted at vertex 0. While the deepest remaining
/// vertex `v` (smallest label on ties) sits deeper than `r`, its ancestor `u`
/// at depth `depth(v) - r` joins the net and the subtree below `u` is removed:
/// every vertex there is within tree distance `r` of `u`, and at least `r + 1`
/// vertices go. Once the depth is at most `r` the root covers the rest.
/// Redundant members are then dropped, which only shrinks the set.
pub fn r_net(g: &Graph, r: usize) -> Result<VertexSet, GraphError> {
    let n = g.n();
    if n == 0 {
        return Err(GraphError::Empty);
    }
    let root = 0;
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![usize::MAX; n];
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
    depth[root] = 0;
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        for w in g.neighbors(u) {
            if depth[w] == usize::MAX {
                depth[w] = depth[u] + 1;
                parent[w] = u;
                children[u].push(w);
                queue.push_back(w);
            }
        }
    }
    if depth.contains(&usize::MAX) {
        return Err(GraphError::Disconnected);
    }

    let mut alive = vec![true; n];
    let mut net = VertexSet::new();
    loop {
        // deepest alive vertex, smallest label on ties
        let v = (0..n)
            .filter(|&x| alive[x])
            .max_by(|&a, &b| depth[a].cmp(&depth[b]).then(b.cmp(&a)))
            .expect("root is never removed");
        if depth[v] <= r {
            net.insert(root);
            return Ok(prune_redundant(g, net, r));
        }
        let mut u = v;
        for _ in 0..r {
            u = parent[u];
        }
        net.insert(u);
        let mut stack = vec![u];
        while let Some(x) = stack.pop() {
            if alive[x] {
                alive[x] = false;
                stack.extend(children[x].iter().copied());
            }
        }
    }
}

/// Drops members whose removal keeps the covering property, largest label first.
fn prune_redundant(g: &Graph, net: VertexSet, r: usize) -> VertexSet {
    let mut members: Vec<usize> = net.as_slice().to_vec();
    for s in net.as_slice().iter().rev() {
        let rest: VertexSet = members.iter().copied().filter(|x| x != s).collect();
        if is_r_net(g, &rest, r) {
            members.retain(|x| x != s);
        }
    }
    members.into_iter().collect()
}

/// `true` iff every vertex of `g` is within distance `r` of some member of `net`.
pub fn is_r_net(g: &Graph, net: &VertexSet, r: usize) -> bool {
    let mut covered = vec![false; g.n()];
    for s in net.iter() {
        if let Ok(dist) = g.distances_from(s) {
            for (v, d) in dist.into_iter().enumerate() {
                if matches!(d, Some(d) if d <= r) {
                    covered[v] = true;
                }
            }
        }
    }
    covered.into_iter().all(|c| c)
}

//! Isomorphism-class enumeration by vertex extension.
//!
//! Every graph on `n` vertices is some `(n-1)`-vertex graph plus one vertex,
//! and every connected graph has a non-cut vertex, so connected classes on `n`
//! vertices all arise from connected classes on `n - 1` vertices plus a vertex
//! with a nonempty neighbourhood. Levels are deduplicated by canonical key,
//! sorted, and cached.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;

use super::canon::{canonical_key, graph_from_key, MAX_CANON};
use super::SpectralOrderError;
use crate::graph::Graph;

/// Default largest `n` accepted by the enumerators.
pub const ENUM_CAP: usize = 10;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
enum Family {
    All,
    Connected,
}

type Level = Arc<Vec<u64>>;

fn cache() -> &'static Mutex<HashMap<(Family, usize), Level>> {
    static CACHE: OnceLock<Mutex<HashMap<(Family, usize), Level>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Adds vertex `n - 1` adjacent to the vertices in `mask` and returns the canonical key.
pub(crate) fn extend_key(base: &Graph, mask: u32) -> u64 {
    let n = base.n() + 1;
    let mut g = Graph::empty(n);
    for (u, v) in base.edges() {
        g.add_edge(u, v).expect("in range");
    }
    for u in 0..n - 1 {
        if mask >> u & 1 == 1 {
            g.add_edge(u, n - 1).expect("in range");
        }
    }
    canonical_key(&g)
}

/// Canonical keys of all one-vertex extensions of `bases`, sorted and deduplicated.
pub(crate) fn extend_level(n_base: usize, bases: &[u64], nonempty: bool) -> Vec<u64> {
    let start = u32::from(nonempty);
    let mut keys: Vec<u64> = bases
        .par_iter()
        .flat_map_iter(|&k| {
            let base = graph_from_key(n_base, k);
            (start..1u32 << n_base).map(move |mask| extend_key(&base, mask))
        })
        .collect();
    keys.par_sort_unstable();
    keys.dedup();
    keys
}

fn level(family: Family, n: usize) -> Level {
    if let Some(l) = cache().lock().expect("cache lock").get(&(family, n)) {
        return Arc::clone(l);
    }
    let keys = if n <= 1 {
        if n == 0 && family == Family::Connected {
            Vec::new()
        } else {
            vec![0]
        }
    } else {
        let prev = level(family, n - 1);
        extend_level(n - 1, &prev, family == Family::Connected)
    };
    let l = Arc::new(keys);
    cache()
        .lock()
        .expect("cache lock")
        .insert((family, n), Arc::clone(&l));
    l
}

fn check_cap(n: usize, cap: usize) -> Result<(), SpectralOrderError> {
    let cap = cap.min(MAX_CANON);
    if n > cap {
        return Err(SpectralOrderError::AboveCap { n, cap });
    }
    Ok(())
}

/// One canonical representative per isomorphism class of connected graphs on `n` vertices,
/// in increasing canonical key.
pub fn enumerate_connected(n: usize) -> Result<Vec<Graph>, SpectralOrderError> {
    enumerate_connected_capped(n, ENUM_CAP)
}

pub fn enumerate_connected_capped(n: usize, cap: usize) -> Result<Vec<Graph>, SpectralOrderError> {
    check_cap(n, cap)?;
    if n == 0 {
        return Ok(Vec::new());
    }
    Ok(level(Family::Connected, n)
        .iter()
        .map(|&k| graph_from_key(n, k))
        .collect())
}

/// One canonical representative per isomorphism class of graphs on `n` vertices.
pub fn enumerate_all(n: usize) -> Result<Vec<Graph>, SpectralOrderError> {
    check_cap(n, ENUM_CAP)?;
    Ok(level(Family::All, n)
        .iter()
        .map(|&k| graph_from_key(n, k))
        .collect())
}

/// Number of connected classes on `n` vertices.
pub fn count_connected(n: usize) -> Result<usize, SpectralOrderError> {
    check_cap(n, ENUM_CAP)?;
    Ok(if n == 0 {
        0
    } else {
        level(Family::Connected, n).len()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let connected: Vec<usize> = (1..=7).map(|n| count_connected(n).unwrap()).collect();
        assert_eq!(connected, vec![1, 1, 2, 6, 21, 112, 853]);
        let all: Vec<usize> = (1..=7).map(|n| enumerate_all(n).unwrap().len()).collect();
        assert_eq!(all, vec![1, 2, 4, 11, 34, 156, 1044]);
    }

    #[test]
    fn three_vertices() {
        let g = enumerate_connected(3).unwrap();
        assert_eq!(g.len(), 2);
        let edges: Vec<usize> = g.iter().map(Graph::edge_count).collect();
        assert_eq!(edges, vec![2, 3]);
        assert!(g.iter().all(Graph::is_connected));
    }

    #[test]
    fn cap() {
        assert!(enumerate_connected(11).is_err());
        assert!(enumerate_connected_capped(5, 4).is_err());
        assert!(enumerate_connected(0).unwrap().is_empty());
    }
}

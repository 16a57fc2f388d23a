//! Large independent sets: randomized min-degree greedy with (1,2)-swap local search.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::graph::{Graph, VertexSet};

pub const RESTARTS: u64 = 50;

fn greedy(g: &Graph, rng: &mut ChaCha8Rng) -> Vec<bool> {
    let n = g.n();
    let mut alive = vec![true; n];
    let mut deg: Vec<usize> = g.degrees();
    let mut chosen = vec![false; n];
    let mut left = n;
    while left > 0 {
        let min = (0..n)
            .filter(|&v| alive[v])
            .map(|v| deg[v])
            .min()
            .expect("nonempty");
        let ties: Vec<usize> = (0..n).filter(|&v| alive[v] && deg[v] == min).collect();
        let v = ties[rng.gen_range(0..ties.len())];
        chosen[v] = true;
        let mut gone = vec![v];
        gone.extend(g.neighbors(v).filter(|&u| alive[u]));
        for &u in &gone {
            alive[u] = false;
            left -= 1;
        }
        for &u in &gone {
            for w in g.neighbors(u) {
                if alive[w] {
                    deg[w] -= 1;
                }
            }
        }
    }
    chosen
}

/// Replaces one member by two non-members while that is possible.
fn local_search(g: &Graph, chosen: &mut [bool], rng: &mut ChaCha8Rng) {
    let n = g.n();
    // tight[v] = number of chosen neighbours of v
    let mut tight: Vec<usize> = (0..n)
        .map(|v| g.neighbors(v).filter(|&u| chosen[u]).count())
        .collect();
    let flip = |v: usize, on: bool, chosen: &mut [bool], tight: &mut [usize]| {
        chosen[v] = on;
        for u in g.neighbors(v) {
            if on {
                tight[u] += 1;
            } else {
                tight[u] -= 1;
            }
        }
    };
    loop {
        let mut improved = false;
        let mut members: Vec<usize> = (0..n).filter(|&v| chosen[v]).collect();
        members.shuffle(rng);
        for x in members {
            if !chosen[x] {
                continue;
            }
            // non-members whose only chosen neighbour is x
            let cands: Vec<usize> = g
                .neighbors(x)
                .filter(|&u| !chosen[u] && tight[u] == 1)
                .collect();
            let pair = cands.iter().enumerate().find_map(|(i, &a)| {
                cands[i + 1..]
                    .iter()
                    .find(|&&b| !g.has_edge(a, b))
                    .map(|&b| (a, b))
            });
            if let Some((a, b)) = pair {
                flip(x, false, chosen, &mut tight);
                flip(a, true, chosen, &mut tight);
                flip(b, true, chosen, &mut tight);
                // free vertices appear when x leaves; take them greedily
                for v in 0..n {
                    if !chosen[v] && tight[v] == 0 {
                        flip(v, true, chosen, &mut tight);
                    }
                }
                improved = true;
            }
        }
        if !improved {
            return;
        }
    }
}

/// Best independent set over [`RESTARTS`] seeded restarts: maximum size, then
/// lexicographically smallest sorted vertex list. Independent of thread count.
pub fn independent_set_search(g: &Graph, seed: u64) -> VertexSet {
    if g.n() == 0 {
        return VertexSet::new();
    }
    let found: Vec<Vec<usize>> = (0..RESTARTS)
        .into_par_iter()
        .map(|i| {
            let mut rng =
                ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(i));
            let mut chosen = greedy(g, &mut rng);
            local_search(g, &mut chosen, &mut rng);
            (0..g.n()).filter(|&v| chosen[v]).collect()
        })
        .collect();
    let best = found
        .into_iter()
        .max_by(|a, b| a.len().cmp(&b.len()).then_with(|| b.cmp(a)))
        .expect("restarts > 0");
    best.into_iter().collect()
}

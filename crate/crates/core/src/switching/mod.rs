//! Seidel switching of line configurations, the profile classes `C_X(A)`, and a
//! switching procedure that bounds the maximum degree of the associated graph.
//!
//! Negating `v_i` for `i` in `S` leaves the lines unchanged and complements the
//! associated graph across the cut `(S, V \ S)`.

mod clique;
mod independent;

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::algebraic::Angle;
use crate::equiangular::{ser_graph6, LineConfig, NORM_TOL, PRODUCT_TOL};
use crate::graph::{Graph, GraphError, VertexSet};

pub use clique::{is_clique, max_clique};
pub use independent::{independent_set_search, RESTARTS};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SwitchingError {
    #[error("<v{i}, v{j}> = {product} is not +-{alpha} within {PRODUCT_TOL}")]
    BadProduct {
        i: usize,
        j: usize,
        product: f64,
        alpha: f64,
    },
    #[error("vector {i} has norm {norm}")]
    BadNorm { i: usize, norm: f64 },
    #[error("vector {i} has length {len}, expected {d}")]
    BadLength { i: usize, len: usize, d: usize },
    #[error("A is not a subset of X")]
    NotSubset,
    #[error("X is not independent")]
    NotIndependent,
    #[error("parameter {0} must be positive")]
    NonPositive(&'static str),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Graph on the vectors with an edge wherever the inner product is negative.
pub fn associated_graph(config: &LineConfig, angle: &Angle) -> Result<Graph, SwitchingError> {
    let alpha = angle.alpha_f64();
    let n = config.len();
    let mut g = Graph::empty(n);
    for (i, v) in config.vectors.iter().enumerate() {
        if v.len() != config.d {
            return Err(SwitchingError::BadLength {
                i,
                len: v.len(),
                d: config.d,
            });
        }
        let norm = dot(v, v).sqrt();
        if !((norm - 1.0).abs() <= NORM_TOL) {
            return Err(SwitchingError::BadNorm { i, norm });
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let p = dot(&config.vectors[i], &config.vectors[j]);
            if !((p.abs() - alpha).abs() <= PRODUCT_TOL) {
                return Err(SwitchingError::BadProduct {
                    i,
                    j,
                    product: p,
                    alpha,
                });
            }
            if p < 0.0 {
                g.add_edge(i, j)?;
            }
        }
    }
    Ok(g)
}

/// Negates the vectors indexed by `s`; indices outside the configuration are ignored.
pub fn switch(config: &LineConfig, s: &VertexSet) -> LineConfig {
    let mut out = config.clone();
    let n = out.len();
    for i in s.iter().filter(|&i| i < n) {
        for x in &mut out.vectors[i] {
            *x = -*x;
        }
    }
    out
}

/// `G` with every pair across `(S, V \ S)` complemented.
pub fn switch_graph(g: &Graph, s: &VertexSet) -> Graph {
    let mut out = g.clone();
    for u in s.iter() {
        for v in (0..g.n()).filter(|&v| !s.contains(v)) {
            out.toggle_edge(u, v).expect("in range, distinct");
        }
    }
    out
}

/// Vertices outside `X` adjacent to every vertex of `A` and to none of `X \ A`.
pub fn c_profile(g: &Graph, x: &VertexSet, a: &VertexSet) -> Result<VertexSet, SwitchingError> {
    if !a.is_subset(x) {
        return Err(SwitchingError::NotSubset);
    }
    if let Some(m) = x.max() {
        if m >= g.n() {
            return Err(GraphError::VertexOutOfRange {
                vertex: m,
                n: g.n(),
            }
            .into());
        }
    }
    Ok((0..g.n())
        .filter(|&v| !x.contains(v))
        .filter(|&v| x.iter().all(|u| g.has_edge(u, v) == a.contains(u)))
        .collect())
}

/// The class `A` with `v` in `C_X(A)`, as a bitmask over the positions of `X`.
fn attachment(g: &Graph, x: &VertexSet, v: usize) -> Vec<u64> {
    let mut mask = vec![0u64; x.len().div_ceil(64).max(1)];
    for (i, u) in x.iter().enumerate() {
        if g.has_edge(u, v) {
            mask[i / 64] |= 1 << (i % 64);
        }
    }
    mask
}

/// Sizes of all nonempty classes `C_X(A)`, keyed by `A` (host labels).
pub fn profile_histogram(g: &Graph, x: &VertexSet) -> BTreeMap<Vec<usize>, usize> {
    let mut hist: BTreeMap<Vec<u64>, usize> = BTreeMap::new();
    for v in (0..g.n()).filter(|&v| !x.contains(v)) {
        *hist.entry(attachment(g, x, v)).or_default() += 1;
    }
    let xs = x.as_slice();
    hist.into_iter()
        .map(|(mask, c)| {
            let a = (0..xs.len())
                .filter(|&i| mask[i / 64] >> (i % 64) & 1 == 1)
                .map(|i| xs[i])
                .collect();
            (a, c)
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct CliqueReport {
    pub max_clique: usize,
    pub clique: VertexSet,
    /// `floor(1 / alpha) + 1`.
    pub bound: u64,
    pub holds: bool,
}

/// Exact maximum clique of the associated graph against `1 / alpha + 1`.
pub fn clique_bound_check(
    config: &LineConfig,
    angle: &Angle,
) -> Result<CliqueReport, SwitchingError> {
    let g = associated_graph(config, angle)?;
    Ok(clique_report(&g, angle))
}

fn clique_report(g: &Graph, angle: &Angle) -> CliqueReport {
    let clique = max_clique(g);
    let bound = angle.clique_bound();
    CliqueReport {
        max_clique: clique.len(),
        holds: clique.len() as u64 <= bound,
        clique,
        bound,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LemmaReport {
    pub x_size: usize,
    /// `ceil(lambda^2)`.
    pub degree_bound: u64,
    /// Maximum degree of `G[C_X(∅)]`.
    pub empty_profile_max_degree: usize,
    pub empty_profile_size: usize,
    pub part_a: bool,
    pub m2: u64,
    /// Nonempty proper `Y ⊂ X` with a nonempty class; every other class is empty.
    pub occupied_classes: usize,
    pub max_class_size: usize,
    pub max_class: Vec<usize>,
    pub part_b: bool,
    /// All `2^|X| - 2` classes are covered by the histogram, so the check is exhaustive.
    pub exhaustive: bool,
}

/// `ceil(x)` ignoring rounding noise just above an integer.
fn ceil_tol(x: f64) -> u64 {
    (x - 1e-9).ceil().max(0.0) as u64
}

/// Checks `Δ(G[C_X(∅)]) <= ceil(lambda^2)` and `|C_X(Y)| <= M2` for every
/// nonempty proper `Y ⊂ X`.
pub fn independent_lemma_check(
    g: &Graph,
    x: &VertexSet,
    lambda: f64,
    m2: u64,
) -> Result<LemmaReport, SwitchingError> {
    if let Some(m) = x.max() {
        if m >= g.n() {
            return Err(GraphError::VertexOutOfRange {
                vertex: m,
                n: g.n(),
            }
            .into());
        }
    }
    if !g.is_independent(x) {
        return Err(SwitchingError::NotIndependent);
    }
    let hist = profile_histogram(g, x);
    let empty: Vec<usize> = c_profile(g, x, &VertexSet::new())?.as_slice().to_vec();
    let sub = g.induced(&empty)?;
    let degree_bound = ceil_tol(lambda * lambda);
    let empty_profile_max_degree = sub.graph.max_degree();
    let proper: Vec<(&Vec<usize>, &usize)> = hist
        .iter()
        .filter(|(a, _)| !a.is_empty() && a.len() < x.len())
        .collect();
    let (max_class, max_class_size) = proper
        .iter()
        .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0)))
        .map_or((Vec::new(), 0), |(a, &c)| ((*a).clone(), c));
    Ok(LemmaReport {
        x_size: x.len(),
        degree_bound,
        empty_profile_max_degree,
        empty_profile_size: empty.len(),
        part_a: empty_profile_max_degree as u64 <= degree_bound,
        m2,
        occupied_classes: proper.len(),
        part_b: max_class_size as u64 <= m2,
        max_class,
        max_class_size,
        exhaustive: true,
    })
}

/// Constants of the switching procedure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SwitchParams {
    /// Clique size excluded by the clique bound: `ceil(1 / alpha) + 2`.
    pub m0: u64,
    /// Half the size of the independent set `V_1`.
    pub m1: u64,
    /// Cap on the size of a profile class.
    pub m2: u64,
    /// `ceil(lambda^2) + 2 M1 + 2^(2 M1) M2`, saturating.
    pub delta_target: u64,
}

impl SwitchParams {
    /// `M1 = max(8, ceil(lambda^2) + 2)`.
    pub fn defaults(angle: &Angle) -> Self {
        Self::with_m1(angle, 8u64.max(angle.lambda_sq_ceil() + 2)).expect("positive")
    }

    /// `M2 = ceil(lambda^2 (2 M1 + 2 lambda))` for the given `M1`.
    pub fn with_m1(angle: &Angle, m1: u64) -> Result<Self, SwitchingError> {
        if m1 == 0 {
            return Err(SwitchingError::NonPositive("M1"));
        }
        let l = angle.lambda_f64();
        let m2 = ceil_tol(l * l * (2.0 * m1 as f64 + 2.0 * l)).max(1);
        Self::new(angle, m1, m2)
    }

    pub fn new(angle: &Angle, m1: u64, m2: u64) -> Result<Self, SwitchingError> {
        if m1 == 0 {
            return Err(SwitchingError::NonPositive("M1"));
        }
        if m2 == 0 {
            return Err(SwitchingError::NonPositive("M2"));
        }
        let pow = 1u64
            .checked_shl((2 * m1).min(64) as u32)
            .filter(|_| 2 * m1 < 64)
            .unwrap_or(u64::MAX);
        let delta_target = angle
            .lambda_sq_ceil()
            .saturating_add(2 * m1)
            .saturating_add(pow.saturating_mul(m2));
        Ok(SwitchParams {
            m0: angle.alpha_inv_ceil() + 2,
            m1,
            m2,
            delta_target,
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SwitchResult {
    pub params: SwitchParams,
    /// `+1` or `-1` per vector.
    pub signs: Vec<i8>,
    pub switched_config: LineConfig,
    #[serde(serialize_with = "ser_graph6")]
    pub associated_graph: Graph,
    pub max_degree: usize,
    pub max_degree_before: usize,
    /// `histogram[k]` = vertices of degree `k`.
    pub degree_histogram_before: Vec<usize>,
    pub degree_histogram_after: Vec<usize>,
    /// `V_1`, empty when no independent set of size `2 M1` was found.
    pub independent_set: VertexSet,
    pub negated: VertexSet,
    pub lemma: Option<LemmaReport>,
    pub clique: CliqueReport,
    pub within_target: bool,
    pub log: Vec<String>,
}

fn histogram(g: &Graph) -> Vec<usize> {
    let mut h = vec![0; g.max_degree() + 1];
    for d in g.degrees() {
        h[d] += 1;
    }
    h
}

/// Finds an independent set `V_1` of size `2 M1` in the associated graph and
/// negates every vector outside `V_1` adjacent to more than `M1` members of it.
pub fn bounded_degree_switch(
    config: &LineConfig,
    angle: &Angle,
    params: SwitchParams,
    seed: u64,
) -> Result<SwitchResult, SwitchingError> {
    let g = associated_graph(config, angle)?;
    let n = g.n();
    let mut log = vec![format!(
        "associated graph: {n} vertices, {} edges, max degree {}",
        g.edge_count(),
        g.max_degree()
    )];
    let found = independent_set_search(&g, seed);
    let want = 2 * params.m1 as usize;
    log.push(format!(
        "independent set search ({RESTARTS} restarts): size {}",
        found.len()
    ));
    let (v1, negated) = if found.len() < want {
        log.push(format!(
            "no independent set of size 2*M1 = {want}; configuration left unchanged"
        ));
        (VertexSet::new(), VertexSet::new())
    } else {
        let v1: VertexSet = found.iter().take(want).collect();
        let negated: VertexSet = (0..n)
            .filter(|&v| !v1.contains(v) && g.degree_into(v, &v1) > params.m1 as usize)
            .collect();
        log.push(format!(
            "V1 = first {want} members; negating {} vectors adjacent to more than {} of V1",
            negated.len(),
            params.m1
        ));
        (v1, negated)
    };
    let switched_config = switch(config, &negated);
    let after = associated_graph(&switched_config, angle)?;
    debug_assert_eq!(after, switch_graph(&g, &negated));
    let lemma = if v1.is_empty() {
        None
    } else {
        Some(independent_lemma_check(
            &after,
            &v1,
            angle.lambda_f64(),
            params.m2,
        )?)
    };
    let max_degree = after.max_degree();
    log.push(format!(
        "max degree {} -> {max_degree} (target {})",
        g.max_degree(),
        params.delta_target
    ));
    Ok(SwitchResult {
        params,
        signs: (0..n)
            .map(|v| if negated.contains(v) { -1 } else { 1 })
            .collect(),
        switched_config,
        max_degree,
        max_degree_before: g.max_degree(),
        degree_histogram_before: histogram(&g),
        degree_histogram_after: histogram(&after),
        clique: clique_report(&after, angle),
        within_target: max_degree as u64 <= params.delta_target,
        associated_graph: after,
        independent_set: v1,
        negated,
        lemma,
        log,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equiangular::{construct_lower_bound, lines_from_graph};
    use crate::graph::generators::{complete, path};
    use crate::linalg::DEFAULT_RANK_TOL;

    fn angle(s: &str) -> Angle {
        Angle::parse(s).unwrap()
    }

    #[test]
    fn obtuse_pairs_become_edges() {
        let c = LineConfig {
            d: 3,
            alpha: 0.5,
            vectors: vec![
                vec![1.0, 0.0, 0.0],
                vec![0.5, 0.75f64.sqrt(), 0.0],
                vec![0.5, 0.5 / 3f64.sqrt(), (2.0f64 / 3.0).sqrt()],
            ],
        };
        assert_eq!(
            associated_graph(&c, &angle("1/2")).unwrap(),
            Graph::empty(3)
        );
        let s: VertexSet = [1].into_iter().collect();
        assert_eq!(
            associated_graph(&switch(&c, &s), &angle("1/2"))
                .unwrap()
                .edge_count(),
            2
        );
        let mut bad = c.clone();
        bad.vectors[2][0] = 0.4;
        assert!(associated_graph(&bad, &angle("1/2")).is_err());
    }

    #[test]
    fn switching_path_centre() {
        let a = angle("1/3");
        let p3 = path(3).unwrap();
        let c = lines_from_graph(&p3, &a, DEFAULT_RANK_TOL).unwrap();
        assert_eq!(associated_graph(&c, &a).unwrap(), p3);
        let centre: VertexSet = [1].into_iter().collect();
        let g = associated_graph(&switch(&c, &centre), &a).unwrap();
        assert_eq!(g, Graph::empty(3));
        assert_eq!(g, switch_graph(&p3, &centre));
        let all: VertexSet = (0..3).collect();
        assert_eq!(associated_graph(&switch(&c, &all), &a).unwrap(), p3);
    }

    #[test]
    fn profile_examples() {
        let k4 = complete(4).unwrap();
        let x: VertexSet = [0, 2].into_iter().collect();
        assert_eq!(c_profile(&k4, &x, &x).unwrap().as_slice(), &[1, 3]);
        let p = path(4).unwrap();
        let v: VertexSet = [1].into_iter().collect();
        assert_eq!(c_profile(&p, &v, &v).unwrap().as_slice(), &[0, 2]);
        assert_eq!(
            c_profile(&p, &v, &VertexSet::new()).unwrap().as_slice(),
            &[3]
        );
        assert_eq!(
            c_profile(&p, &v, &[2].into_iter().collect()),
            Err(SwitchingError::NotSubset)
        );
    }

    #[test]
    fn construction_checks() {
        let a = angle("1/5");
        let c = construct_lower_bound(&complete(3).unwrap(), 3, 11, &a, DEFAULT_RANK_TOL).unwrap();
        let g = associated_graph(&c, &a).unwrap();
        assert_eq!(g.components().iter().filter(|c| c.len() == 3).count(), 5);
        let r = clique_bound_check(&c, &a).unwrap();
        assert_eq!((r.max_clique, r.bound, r.holds), (3, 6, true));
        let isolated: VertexSet = (0..g.n()).filter(|&v| g.degree(v) == 0).collect();
        let l = independent_lemma_check(&g, &isolated, 2.0, 10).unwrap();
        assert!(l.part_a && l.part_b);
        assert_eq!(
            (
                l.degree_bound,
                l.empty_profile_max_degree,
                l.occupied_classes
            ),
            (4, 2, 0)
        );
        assert_eq!(
            independent_lemma_check(&complete(3).unwrap(), &(0..2).collect(), 2.0, 1).unwrap_err(),
            SwitchingError::NotIndependent
        );
    }

    #[test]
    fn params() {
        let p = SwitchParams::defaults(&angle("1/5"));
        assert_eq!((p.m0, p.m1, p.m2), (7, 8, 80));
        assert_eq!(p.delta_target, 4 + 16 + (1 << 16) * 80);
        let p = SwitchParams::defaults(&angle("1/3"));
        assert_eq!((p.m0, p.m1, p.m2), (5, 8, 18));
        assert!(SwitchParams::with_m1(&angle("1/3"), 0).is_err());
        assert_eq!(
            SwitchParams::with_m1(&angle("1/3"), 40)
                .unwrap()
                .delta_target,
            u64::MAX
        );
    }

    #[test]
    fn hub_vertex_is_switched_away() {
        let a = angle("1/3");
        let base = crate::graph::generators::repeat(&complete(2).unwrap(), 30);
        let mut g = base.disjoint_union(&Graph::empty(1));
        for v in 0..60 {
            g.add_edge(v, 60).unwrap();
        }
        let c = lines_from_graph(&g, &a, DEFAULT_RANK_TOL).unwrap();
        let r = bounded_degree_switch(&c, &a, SwitchParams::defaults(&a), 1).unwrap();
        assert_eq!(r.max_degree_before, 60);
        assert_eq!(r.max_degree, 1);
        assert_eq!(r.negated.as_slice(), &[60]);
        assert!(r.lemma.unwrap().part_a);
    }

    #[test]
    fn small_configuration_unchanged() {
        let a = angle("1/3");
        let c = lines_from_graph(&path(3).unwrap(), &a, DEFAULT_RANK_TOL).unwrap();
        let r = bounded_degree_switch(&c, &a, SwitchParams::defaults(&a), 0).unwrap();
        assert!(r.independent_set.is_empty());
        assert_eq!(r.signs, vec![1, 1, 1]);
        assert_eq!(r.switched_config, c);
    }
}

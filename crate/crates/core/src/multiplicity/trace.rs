//! Executable trace of the multiplicity bound for `lambda_j` of a connected
//! bounded-degree graph, recording every inequality in a ledger.
//!
//! With `lambda = lambda_j(G) > 0`, `r1 = floor(c ln ln n)`, `r2 = floor(c ln n)`
//! and `r = r1 + r2`: `U` collects the vertices whose `r`-ball has spectral
//! radius above `lambda`, `U0` is a maximal subset of `U` with pairwise
//! distance at least `2(r + 1)`, `V0` is an `r1`-net, and
//! `H = G - (V0 ∪ U)`. Interlacing then gives
//! `mult_G(lambda) <= mult_H(lambda) + |V0| + |U|`, while closed walks bound
//! `mult_H(lambda)`.

use rayon::prelude::*;
use serde::Serialize;

use super::{cluster_count, walk_bound_check, MultiplicityError, LEDGER_TOL};
use crate::equiangular::ser_graph6;
use crate::graph::{delete_vertices, is_r_net, neighborhood, r_net, Graph, GraphError, VertexSet};
use crate::linalg::{adjacency_eigenvalues, spectral_radius};
use crate::report::LedgerEntry;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TraceParams {
    pub j: usize,
    pub c: f64,
    pub r1: usize,
    pub r2: usize,
    pub r: usize,
}

impl TraceParams {
    pub fn new(n: usize, j: usize, c: f64) -> Result<Self, MultiplicityError> {
        let ln = (n as f64).ln();
        let r1 = (c * ln.ln()).floor().max(0.0) as usize;
        let r2 = (c * ln).floor().max(0.0) as usize;
        if r1 == 0 || r2 == 0 || !c.is_finite() {
            return Err(MultiplicityError::RadiiCollapse { n, c, r1, r2 });
        }
        Ok(TraceParams {
            j,
            c,
            r1,
            r2,
            r: r1 + r2,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Branch {
    /// `lambda_j <= 0`: only the edge-count bound `2|E| <= j^2 Δ^2` applies.
    BoundedSize,
    Traced,
}

/// Comparison outside the ledger: meaningful only as `n` grows.
#[derive(Clone, Debug, Serialize)]
pub struct AsymptoticStep {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TraceReport {
    pub branch: Branch,
    pub n: usize,
    pub max_degree: usize,
    pub lambda: f64,
    pub params: Option<TraceParams>,
    pub u: VertexSet,
    pub u0: VertexSet,
    pub v0: VertexSet,
    #[serde(serialize_with = "ser_graph6")]
    pub h: Graph,
    /// Host labels of the vertices of `h`.
    pub h_labels: Vec<usize>,
    pub multiplicity_in_g: usize,
    pub multiplicity_in_h: usize,
    pub tolerance: f64,
    pub ledger: Vec<LedgerEntry>,
    pub asymptotic: Option<AsymptoticStep>,
}

impl TraceReport {
    pub fn holds(&self) -> bool {
        self.ledger.iter().all(|e| e.holds)
    }

    pub fn entry(&self, name: &str) -> Option<&LedgerEntry> {
        self.ledger.iter().find(|e| e.name == name)
    }
}

/// Entry with the smallest slack, renamed.
fn worst(name: &str, entries: Vec<LedgerEntry>) -> Option<LedgerEntry> {
    let count = entries.len();
    entries
        .into_iter()
        .min_by(|a, b| a.slack.total_cmp(&b.slack))
        .map(|mut e| {
            e.note = Some(format!(
                "worst of {count} vertices{}",
                e.note.map(|n| format!(": {n}")).unwrap_or_default()
            ));
            e.name = name.to_string();
            e
        })
}

pub const FINAL_ACCOUNTING: &str = "mult_G(lambda) <= mult_H(lambda) + |V0| + |U|";

/// Runs the multiplicity argument for `lambda_j(G)` at scale `c`.
pub fn proof_trace(g: &Graph, j: usize, c: f64) -> Result<TraceReport, MultiplicityError> {
    let n = g.n();
    if n < 2 {
        return Err(MultiplicityError::TooSmall(2));
    }
    if !g.is_connected() {
        return Err(GraphError::Disconnected.into());
    }
    if j == 0 || j > n {
        return Err(MultiplicityError::IndexOutOfRange { j, n });
    }
    let values = adjacency_eigenvalues(g)?;
    let lambda = values[j - 1];
    let delta = g.max_degree();
    let tol = 1e-7 * values[0].max(1.0);
    let multiplicity_in_g = cluster_count(&values, lambda, tol)?;
    let mut ledger = Vec::new();

    if lambda <= tol {
        let two_e = 2.0 * g.edge_count() as f64;
        let sq: f64 = values.iter().map(|x| x * x).sum();
        ledger.push(LedgerEntry::approx_eq(
            "2|E| = sum_i lambda_i^2",
            sq,
            two_e,
            LEDGER_TOL,
        ));
        ledger.push(LedgerEntry::leq(
            "2|E| <= j^2 Delta^2",
            two_e,
            (j * j * delta * delta) as f64,
            0.0,
        ));
        return Ok(TraceReport {
            branch: Branch::BoundedSize,
            n,
            max_degree: delta,
            lambda,
            params: None,
            u: VertexSet::new(),
            u0: VertexSet::new(),
            v0: VertexSet::new(),
            h: g.clone(),
            h_labels: (0..n).collect(),
            multiplicity_in_g,
            multiplicity_in_h: multiplicity_in_g,
            tolerance: tol,
            ledger,
            asymptotic: None,
        });
    }

    let params = TraceParams::new(n, j, c)?;
    let TraceParams { r1, r2, r, .. } = params;

    // U: balls of radius r with spectral radius above lambda
    let ball_radius = (0..n)
        .into_par_iter()
        .map(|v| Ok(spectral_radius(&neighborhood(g, v, r)?.graph)?))
        .collect::<Result<Vec<f64>, MultiplicityError>>()?;
    let above = lambda + LEDGER_TOL * lambda.max(1.0);
    let u: VertexSet = (0..n).filter(|&v| ball_radius[v] > above).collect();

    // U0: greedy by label, pairwise distance >= 2(r + 1)
    let sep = 2 * (r + 1);
    let mut u0 = VertexSet::new();
    let mut blocked = vec![false; n];
    for v in u.iter() {
        if blocked[v] {
            continue;
        }
        u0.insert(v);
        for (w, d) in g.distances_from(v)?.into_iter().enumerate() {
            if matches!(d, Some(d) if d < sep) {
                blocked[w] = true;
            }
        }
    }
    let k = u0.len();
    ledger.push(LedgerEntry::leq(
        "|U0| <= j - 1",
        k as f64,
        (j - 1) as f64,
        0.0,
    ));
    if k > 0 {
        let mut balls = VertexSet::new();
        for v in u0.iter() {
            balls = balls.union(&neighborhood(g, v, r)?.host_set());
        }
        let union = g.induced(balls.as_slice())?.graph;
        let uvals = adjacency_eigenvalues(&union)?;
        ledger.push(
            LedgerEntry::leq(
                "lambda_j(G) < lambda_|U0|(G_r(U0))",
                lambda,
                uvals[k - 1],
                LEDGER_TOL,
            )
            .with_note(format!("{} components", union.components().len())),
        );
        ledger.push(LedgerEntry::leq(
            "lambda_|U0|(G_r(U0)) <= lambda_|U0|(G)",
            uvals[k - 1],
            values[k - 1],
            LEDGER_TOL,
        ));
    }
    let reach = (delta as f64).powi(sep as i32);
    ledger.push(LedgerEntry::leq(
        "|U| <= |U0| Delta^(2(r+1))",
        u.len() as f64,
        k as f64 * reach,
        0.0,
    ));
    let covered = u.iter().all(|v| {
        u0.iter()
            .any(|w| matches!(g.distances_from(w).ok().and_then(|d| d[v]), Some(d) if d < sep))
    });
    ledger.push(LedgerEntry::exact_eq(
        "U within distance 2r+1 of U0",
        f64::from(u8::from(covered)),
        1.0,
    ));

    // V0 and H
    let v0 = r_net(g, r1)?;
    ledger.push(LedgerEntry::leq(
        "|V0| <= ceil(n / (r1 + 1))",
        v0.len() as f64,
        n.div_ceil(r1 + 1) as f64,
        0.0,
    ));
    ledger.push(LedgerEntry::exact_eq(
        "V0 is an r1-net",
        f64::from(u8::from(is_r_net(g, &v0, r1))),
        1.0,
    ));
    let removed = v0.union(&u);
    let h = delete_vertices(g, &removed)?;
    let e1 = 2 * r1 as i32;
    let mut multiplicity_in_h = 0;
    let mut asymptotic = None;

    if h.graph.n() > 0 {
        let per_vertex = (0..h.graph.n())
            .into_par_iter()
            .map(|i| {
                let lh = spectral_radius(&neighborhood(&h.graph, i, r2)?.graph)?;
                Ok((lh, ball_radius[h.labels[i]]))
            })
            .collect::<Result<Vec<(f64, f64)>, MultiplicityError>>()?;
        let local = |f: &dyn Fn(f64, f64, usize) -> LedgerEntry| -> Vec<LedgerEntry> {
            per_vertex
                .iter()
                .enumerate()
                .map(|(i, &(lh, lg))| f(lh, lg, h.labels[i]))
                .collect()
        };
        let entries = [
            worst(
                "lambda_1(G_r(v)) <= lambda for v in H",
                local(&|_, lg, v| {
                    LedgerEntry::leq("", lg, lambda, LEDGER_TOL).with_note(format!("v = {v}"))
                }),
            ),
            worst(
                "lambda_1(H_r2(v))^(2r1) <= lambda_1(G_r(v))^(2r1) - 1",
                local(&|lh, lg, v| {
                    LedgerEntry::leq("", lh.powi(e1), lg.powi(e1) - 1.0, LEDGER_TOL)
                        .with_note(format!("v = {v}"))
                }),
            ),
            worst(
                "lambda_1(H_r2(v))^(2r1) <= lambda^(2r1) - 1",
                local(&|lh, _, v| {
                    LedgerEntry::leq("", lh.powi(e1), lambda.powi(e1) - 1.0, LEDGER_TOL)
                        .with_note(format!("v = {v}"))
                }),
            ),
        ];
        ledger.extend(entries.into_iter().flatten());

        let walk = walk_bound_check(&h.graph, r2)?;
        ledger.extend(walk.ledger.iter().cloned().map(|mut e| {
            e.name = format!("H, r2: {}", e.name);
            e
        }));
        let ratio = r2 as f64 / r1 as f64;
        let chain = (lambda.powi(e1) - 1.0).max(0.0).powf(ratio) * n as f64;
        ledger.push(LedgerEntry::leq(
            "sum_v lambda_1(H_r2(v))^(2r2) <= (lambda^(2r1) - 1)^(r2/r1) n",
            walk.rhs,
            chain,
            LEDGER_TOL,
        ));
        let hvals = adjacency_eigenvalues(&h.graph)?;
        multiplicity_in_h = hvals.iter().filter(|&&x| (x - lambda).abs() <= tol).count();
        let e2 = 2 * r2 as i32;
        ledger.push(LedgerEntry::leq(
            "mult_H(lambda) lambda^(2r2) <= sum_i lambda_i(H)^(2r2)",
            multiplicity_in_h as f64 * lambda.powi(e2),
            walk.spectral_sum,
            LEDGER_TOL,
        ));
        let bound = (1.0 - lambda.powi(-e1)).max(0.0).powf(ratio) * n as f64;
        ledger.push(LedgerEntry::leq(
            "mult_H(lambda) <= (1 - lambda^(-2r1))^(r2/r1) n",
            multiplicity_in_h as f64,
            bound,
            LEDGER_TOL,
        ));
        let ln = (n as f64).ln();
        let target = (-ln.sqrt()).exp() * n as f64;
        asymptotic = Some(AsymptoticStep {
            name: "(1 - lambda^(-2r1))^(r2/r1) n <= exp(-sqrt(ln n)) n".into(),
            lhs: bound,
            rhs: target,
            holds: bound <= target,
        });
    }
    ledger.push(LedgerEntry::leq(
        FINAL_ACCOUNTING,
        multiplicity_in_g as f64,
        (multiplicity_in_h + v0.len() + u.len()) as f64,
        0.0,
    ));

    Ok(TraceReport {
        branch: Branch::Traced,
        n,
        max_degree: delta,
        lambda,
        params: Some(params),
        u,
        u0,
        v0,
        h: h.graph,
        h_labels: h.labels,
        multiplicity_in_g,
        multiplicity_in_h,
        tolerance: tol,
        ledger,
        asymptotic,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::{complete, cycle, psl2_cayley, star};

    #[test]
    fn cycle_trace() {
        let t = proof_trace(&cycle(20).unwrap(), 2, 1.0).unwrap();
        assert_eq!(t.branch, Branch::Traced);
        assert_eq!(t.multiplicity_in_g, 2);
        let p = t.params.unwrap();
        assert_eq!((p.r1, p.r2), (1, 2));
        assert!(t.holds(), "{:#?}", t.ledger);
    }

    #[test]
    fn cayley_trace() {
        let t = proof_trace(&psl2_cayley(5).unwrap(), 2, 1.0).unwrap();
        assert!(t.holds(), "{:#?}", t.ledger);
        assert!(t.entry(FINAL_ACCOUNTING).unwrap().holds);
    }

    #[test]
    fn bounded_branch() {
        // lambda_2(K_5) = -1
        let t = proof_trace(&complete(5).unwrap(), 2, 1.0).unwrap();
        assert_eq!(t.branch, Branch::BoundedSize);
        assert!(t.holds());
        let t = proof_trace(&star(5).unwrap(), 2, 1.0).unwrap();
        assert_eq!(t.branch, Branch::BoundedSize);
        assert!(t.holds());
    }

    #[test]
    fn collapse_is_reported() {
        assert!(matches!(
            proof_trace(&cycle(10).unwrap(), 2, 0.5),
            Err(MultiplicityError::RadiiCollapse { .. })
        ));
        assert!(proof_trace(&cycle(10).unwrap(), 11, 2.0).is_err());
    }
}

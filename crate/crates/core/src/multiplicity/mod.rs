//! Eigenvalue multiplicities, closed-walk counts, and the local-spectrum
//! argument that bounds the multiplicity of `lambda_j` in bounded-degree graphs.

mod trace;
mod walks;

use serde::Serialize;
use thiserror::Error;

use crate::algebraic::AlgebraicNumber;
use crate::graph::{delete_vertices, is_r_net, r_net, Graph, GraphError, VertexSet};
use crate::linalg::{
    adjacency_eigenvalues, charpoly_exact, spectral_radius, sturm_count, LinalgError,
};
use crate::report::LedgerEntry;

pub use trace::{proof_trace, AsymptoticStep, Branch, TraceParams, TraceReport, FINAL_ACCOUNTING};
pub use walks::{closed_walk_count, trace_of_power, walk_bound_check, WalkReport, EXACT_WALK_CAP};

/// Tolerance on the normalised slack of floating ledger entries.
pub const LEDGER_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MultiplicityError {
    #[error("ambiguous cluster at {target} (tol {tol}): eigenvalue {nearest} is {gap} from the cluster, within 3 tol")]
    Ambiguous {
        target: f64,
        tol: f64,
        nearest: f64,
        gap: f64,
    },
    #[error("tolerance must be positive, got {0}")]
    BadTolerance(f64),
    #[error("graph needs at least {0} vertices")]
    TooSmall(usize),
    #[error("eigenvalue index j = {j} outside 1..={n}")]
    IndexOutOfRange { j: usize, n: usize },
    #[error("radius must be at least 1")]
    ZeroRadius,
    #[error("radii collapse for n = {n}, c = {c}: r1 = {r1}, r2 = {r2}; increase c")]
    RadiiCollapse {
        n: usize,
        c: f64,
        r1: usize,
        r2: usize,
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Number of eigenvalues within `tol` of `target` in a descending list, with
/// every excluded eigenvalue more than `3 tol` from the included ones (from
/// `target` itself when none is included).
pub fn cluster_count(values: &[f64], target: f64, tol: f64) -> Result<usize, MultiplicityError> {
    if !(tol > 0.0) {
        return Err(MultiplicityError::BadTolerance(tol));
    }
    let (inside, outside): (Vec<f64>, Vec<f64>) =
        values.iter().partition(|&&x| (x - target).abs() <= tol);
    let (lo, hi) = if inside.is_empty() {
        (target, target)
    } else {
        (
            inside.iter().copied().fold(f64::INFINITY, f64::min),
            inside.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        )
    };
    for &x in &outside {
        let gap = if x > hi { x - hi } else { lo - x };
        if gap <= 3.0 * tol {
            return Err(MultiplicityError::Ambiguous {
                target,
                tol,
                nearest: x,
                gap,
            });
        }
    }
    Ok(inside.len())
}

/// Multiplicity of `target` as an adjacency eigenvalue of `g`, see [`cluster_count`].
pub fn multiplicity(g: &Graph, target: f64, tol: f64) -> Result<usize, MultiplicityError> {
    cluster_count(&adjacency_eigenvalues(g)?, target, tol)
}

/// `true` iff `lambda` is a root of `q`.
fn is_root(
    q: &crate::linalg::IntPolynomial,
    lambda: &AlgebraicNumber,
) -> Result<bool, LinalgError> {
    if q.is_zero() {
        return Ok(true);
    }
    let g = q.gcd(lambda.minpoly());
    if g.degree().unwrap_or(0) == 0 {
        return Ok(false);
    }
    let (lo, hi) = lambda.interval();
    Ok(sturm_count(&g, lo, hi)? > 0)
}

/// Exact multiplicity of `lambda` as a root of the characteristic polynomial
/// (at most 16 vertices). Divides out `gcd(q, p)` while it still vanishes at
/// `lambda`, shrinking `p` to that gcd each time.
pub fn multiplicity_exact(g: &Graph, lambda: &AlgebraicNumber) -> Result<usize, MultiplicityError> {
    let mut q = charpoly_exact(g)?;
    let mut p = lambda.minpoly().clone();
    let mut m = 0;
    loop {
        let h = q.gcd(&p);
        if h.degree().unwrap_or(0) == 0 || !is_root(&h, lambda)? {
            return Ok(m);
        }
        q = q.div_exact(&h).expect("gcd divides");
        p = h;
        m += 1;
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SecondEigenvalue {
    pub lambda2: f64,
    pub multiplicity: usize,
    pub tolerance: f64,
}

/// `lambda_2` and its multiplicity at tolerance `1e-7 max(1, lambda_1)`.
pub fn second_multiplicity(g: &Graph) -> Result<SecondEigenvalue, MultiplicityError> {
    if g.n() < 2 {
        return Err(MultiplicityError::TooSmall(2));
    }
    if !g.is_connected() {
        return Err(GraphError::Disconnected.into());
    }
    let values = adjacency_eigenvalues(g)?;
    let tol = 1e-7 * values[0].max(1.0);
    Ok(SecondEigenvalue {
        lambda2: values[1],
        multiplicity: cluster_count(&values, values[1], tol)?,
        tolerance: tol,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct NetDeletionReport {
    pub r: usize,
    pub net: VertexSet,
    pub h_vertices: usize,
    pub lambda_g: f64,
    pub lambda_h: Option<f64>,
    /// `true` when the net covers every vertex and `H` is empty.
    pub skipped: bool,
    pub ledger: Vec<LedgerEntry>,
}

impl NetDeletionReport {
    pub fn holds(&self) -> bool {
        self.ledger.iter().all(|e| e.holds)
    }
}

/// Deletes an `r`-net and checks `lambda_1(H)^(2r) <= lambda_1(G)^(2r) - 1`.
pub fn net_deletion_check(g: &Graph, r: usize) -> Result<NetDeletionReport, MultiplicityError> {
    if r == 0 {
        return Err(MultiplicityError::ZeroRadius);
    }
    let n = g.n();
    let net = r_net(g, r)?;
    let h = delete_vertices(g, &net)?;
    let lambda_g = spectral_radius(g)?;
    let mut ledger = vec![
        LedgerEntry::leq(
            "|net| <= ceil(n / (r + 1))",
            net.len() as f64,
            n.div_ceil(r + 1) as f64,
            0.0,
        ),
        LedgerEntry::exact_eq(
            "net covers G",
            f64::from(u8::from(is_r_net(g, &net, r))),
            1.0,
        ),
    ];
    let skipped = h.graph.n() == 0;
    let lambda_h = if skipped {
        None
    } else {
        Some(spectral_radius(&h.graph)?)
    };
    if let Some(lh) = lambda_h {
        let e = 2 * r as i32;
        ledger.push(LedgerEntry::leq(
            "lambda_1(H)^(2r) <= lambda_1(G)^(2r) - 1",
            lh.powi(e),
            lambda_g.powi(e) - 1.0,
            LEDGER_TOL,
        ));
    }
    Ok(NetDeletionReport {
        r,
        net,
        h_vertices: h.graph.n(),
        lambda_g,
        lambda_h,
        skipped,
        ledger,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebraic::parse_algebraic;
    use crate::graph::generators::{
        complete, cycle, paley, path, petersen, psl2_cayley, random_regular, repeat,
    };
    use num_rational::BigRational;

    #[test]
    fn floating_examples() {
        assert_eq!(multiplicity(&complete(5).unwrap(), -1.0, 1e-7).unwrap(), 4);
        assert_eq!(multiplicity(&petersen(), 1.0, 1e-7).unwrap(), 5);
        assert_eq!(multiplicity(&petersen(), -2.0, 1e-7).unwrap(), 4);
        assert_eq!(
            multiplicity(&paley(13).unwrap(), (13f64.sqrt() - 1.0) / 2.0, 1e-7).unwrap(),
            6
        );
        assert!(multiplicity(&complete(3).unwrap(), -1.0, 0.0).is_err());
    }

    #[test]
    fn ambiguous_cluster() {
        assert!(matches!(
            cluster_count(&[1.0, 0.5, 0.5 + 2e-7], 0.5, 1e-7),
            Err(MultiplicityError::Ambiguous { .. })
        ));
        assert!(matches!(
            cluster_count(&[1.0, 0.5 + 2e-7], 0.5, 1e-7),
            Err(MultiplicityError::Ambiguous { .. })
        ));
        assert_eq!(
            cluster_count(&[1.0, 0.5, 0.5 + 5e-7], 0.5, 1e-7).unwrap(),
            1
        );
    }

    #[test]
    fn exact_examples() {
        let one = parse_algebraic("1").unwrap();
        assert_eq!(
            multiplicity_exact(&repeat(&complete(2).unwrap(), 3), &one).unwrap(),
            3
        );
        assert_eq!(
            multiplicity_exact(&path(3).unwrap(), &parse_algebraic("sqrt(2)").unwrap()).unwrap(),
            1
        );
        assert_eq!(multiplicity_exact(&complete(3).unwrap(), &one).unwrap(), 0);
        assert_eq!(
            multiplicity_exact(&complete(3).unwrap(), &parse_algebraic("-1").unwrap()).unwrap(),
            2
        );
        let c8 = cycle(8).unwrap();
        assert_eq!(
            multiplicity_exact(&c8, &parse_algebraic("sqrt(2)").unwrap()).unwrap(),
            2
        );
        assert_eq!(
            multiplicity_exact(&c8, &parse_algebraic("-sqrt(2)").unwrap()).unwrap(),
            2
        );
        assert_eq!(
            multiplicity_exact(&c8, &parse_algebraic("2").unwrap()).unwrap(),
            1
        );
        // reducible input polynomial: x^2 - 1 isolated at 1
        let p = crate::linalg::IntPolynomial::from_i64s(&[-1, 0, 1]);
        let one = AlgebraicNumber::new(
            p,
            BigRational::from_integer(0.into()),
            BigRational::from_integer(2.into()),
        )
        .unwrap();
        assert_eq!(multiplicity_exact(&complete(3).unwrap(), &one).unwrap(), 0);
        assert_eq!(multiplicity_exact(&petersen(), &one).unwrap(), 5);
    }

    #[test]
    fn second_eigenvalue() {
        let s = second_multiplicity(&complete(6).unwrap()).unwrap();
        assert!((s.lambda2 + 1.0).abs() < 1e-9);
        assert_eq!(s.multiplicity, 5);
        let s = second_multiplicity(&paley(17).unwrap()).unwrap();
        assert!((s.lambda2 - (17f64.sqrt() - 1.0) / 2.0).abs() < 1e-8);
        assert_eq!(s.multiplicity, 8);
        let g = psl2_cayley(5).unwrap();
        let values = adjacency_eigenvalues(&g).unwrap();
        assert!((values[0] - 4.0).abs() < 1e-9);
        for &x in &values[1..] {
            assert!(multiplicity(&g, x, 1e-7).unwrap() >= 2);
        }
        assert!(second_multiplicity(&Graph::empty(3)).is_err());
    }

    #[test]
    fn net_deletion() {
        let r = net_deletion_check(&cycle(6).unwrap(), 1).unwrap();
        assert!(r.holds());
        assert!(r.lambda_h.unwrap().powi(2) <= 3.0 + 1e-12);
        // a one-vertex net of K2 leaves K1: 0 <= 1 - 1 with equality
        let r = net_deletion_check(&complete(2).unwrap(), 1).unwrap();
        assert!(!r.skipped && r.holds());
        assert_eq!(r.ledger[2].slack, 0.0);
        for seed in 0..10 {
            let g = random_regular(30, 3, seed).unwrap();
            if g.is_connected() {
                assert!(net_deletion_check(&g, 2).unwrap().holds());
            }
        }
    }
}

//! The spectral radius order `k(lambda)`: the fewest vertices of a graph whose
//! spectral radius is exactly `lambda`, searched over connected graphs up to
//! isomorphism and certified in exact integer arithmetic.

pub mod canon;
mod enumerate;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::algebraic::AlgebraicNumber;
use crate::graph::{graph6, Graph};
use crate::linalg::{
    charpoly_exact, poly_divides, spectral_radius, IntPolynomial, LinalgError, SturmChain,
};

pub use enumerate::{
    count_connected, enumerate_all, enumerate_connected, enumerate_connected_capped, ENUM_CAP,
};

use canon::graph_from_key;
use num_bigint::BigInt;
use num_rational::BigRational;

/// Graphs whose floating `lambda_1` is farther than this from `lambda` skip the exact check.
pub const PREFILTER_TOL: f64 = 1e-6;

/// Default search bound for [`k_order`].
pub const DEFAULT_KMAX: usize = 8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectralOrderError {
    #[error("n = {n} exceeds the enumeration cap {cap}")]
    AboveCap { n: usize, cap: usize },
    #[error("lambda must be positive")]
    NonPositive,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Exact evidence for or against `lambda_1(G) = lambda`.
#[derive(Clone, Debug, Serialize)]
pub struct RadiusCertificate {
    pub charpoly: IntPolynomial,
    pub minpoly: IntPolynomial,
    pub minpoly_divides_charpoly: bool,
    /// Refined isolating interval `(lo, hi]` of `lambda`.
    pub interval: [String; 2],
    /// Distinct roots of the characteristic polynomial in `(lo, hi]`.
    pub roots_in_interval: usize,
    /// Distinct roots in `(hi, n]`; `n` bounds `lambda_1` of an `n`-vertex graph.
    pub roots_above: usize,
    pub upper_bound: usize,
    pub holds: bool,
}

/// Certificate for `lambda_1(G) = lambda`: the minimal polynomial divides the
/// characteristic polynomial, and no root of the latter lies above `lambda`.
pub fn radius_certificate(
    g: &Graph,
    lambda: &AlgebraicNumber,
) -> Result<RadiusCertificate, SpectralOrderError> {
    let cp = charpoly_exact(g)?;
    let divides = poly_divides(lambda.minpoly(), &cp)?;
    let chain = SturmChain::new(&cp);
    let mut x = lambda.clone();
    let count = |x: &AlgebraicNumber| {
        let (lo, hi) = x.interval();
        chain.count(lo, hi)
    };
    while count(&x) > 1 {
        x = x.refined();
    }
    let (lo, hi) = x.interval();
    let n = g.n();
    let top = BigRational::from(BigInt::from(n));
    let roots_in_interval = count(&x);
    let roots_above = if hi < &top { chain.count(hi, &top) } else { 0 };
    Ok(RadiusCertificate {
        charpoly: cp.clone(),
        minpoly: lambda.minpoly().clone(),
        minpoly_divides_charpoly: divides,
        interval: [lo.to_string(), hi.to_string()],
        roots_in_interval,
        roots_above,
        upper_bound: n,
        holds: divides && roots_in_interval == 1 && roots_above == 0,
    })
}

/// `true` iff `lambda_1(G) = lambda` exactly.
pub fn exact_radius_eq(g: &Graph, lambda: &AlgebraicNumber) -> Result<bool, SpectralOrderError> {
    if g.n() == 0 {
        return Ok(false);
    }
    Ok(radius_certificate(g, lambda)?.holds)
}

#[derive(Clone, Debug, Serialize)]
pub struct KOrderResult {
    pub lambda: AlgebraicNumber,
    /// `None` means no witness on at most `search_bound` vertices, so `k(lambda) > search_bound`.
    pub k: Option<usize>,
    #[serde(skip)]
    pub witness: Option<Graph>,
    pub witness_graph6: Option<String>,
    pub search_bound: usize,
    pub certificate: Option<RadiusCertificate>,
    /// Connected classes with `lambda_1 <= lambda + PREFILTER_TOL`, per vertex count.
    pub classes_kept: Vec<usize>,
    pub exact_checks: usize,
}

/// Smallest `k <= kmax` with a connected `k`-vertex graph of spectral radius exactly `lambda`.
///
/// Only classes with `lambda_1 <= lambda + PREFILTER_TOL` are extended: induced
/// subgraphs never have larger spectral radius, and every connected graph is a
/// connected graph plus one vertex, so no witness is missed.
pub fn k_order(lambda: &AlgebraicNumber, kmax: usize) -> Result<KOrderResult, SpectralOrderError> {
    if !lambda.is_positive() {
        return Err(SpectralOrderError::NonPositive);
    }
    if kmax > ENUM_CAP {
        return Err(SpectralOrderError::AboveCap {
            n: kmax,
            cap: ENUM_CAP,
        });
    }
    let target = lambda.to_f64();
    let mut level: Vec<u64> = vec![0];
    let mut classes_kept = Vec::new();
    let mut exact_checks = 0;
    for n in 1..=kmax {
        if n > 1 {
            level = enumerate::extend_level(n - 1, &level, true);
        }
        let radii = level
            .par_iter()
            .map(|&k| spectral_radius(&graph_from_key(n, k)).map(|r| (k, r)))
            .collect::<Result<Vec<_>, _>>()?;
        let hits: Vec<u64> = radii
            .iter()
            .filter(|(_, r)| (r - target).abs() <= PREFILTER_TOL)
            .map(|&(k, _)| k)
            .collect();
        exact_checks += hits.len();
        let verdicts = hits
            .par_iter()
            .map(|&k| exact_radius_eq(&graph_from_key(n, k), lambda).map(|ok| ok.then_some(k)))
            .collect::<Result<Vec<_>, _>>()?;
        if let Some(key) = verdicts.into_iter().flatten().min() {
            let g = graph_from_key(n, key);
            let certificate = radius_certificate(&g, lambda)?;
            classes_kept.push(radii.len());
            return Ok(KOrderResult {
                lambda: lambda.clone(),
                k: Some(n),
                witness_graph6: Some(graph6::encode(&g)),
                witness: Some(g),
                search_bound: kmax,
                certificate: Some(certificate),
                classes_kept,
                exact_checks,
            });
        }
        level = radii
            .into_iter()
            .filter(|&(_, r)| r <= target + PREFILTER_TOL)
            .map(|(k, _)| k)
            .collect();
        classes_kept.push(level.len());
    }
    Ok(KOrderResult {
        lambda: lambda.clone(),
        k: None,
        witness: None,
        witness_graph6: None,
        search_bound: kmax,
        certificate: None,
        classes_kept,
        exact_checks,
    })
}

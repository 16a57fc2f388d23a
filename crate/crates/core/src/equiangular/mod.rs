//! Equiangular line configurations and their graphs.
//!
//! Unit vectors `v_1..v_N` with `<v_i, v_j> = +-alpha` correspond to graphs on
//! `N` vertices (edges at `-alpha`) whose Gram matrix
//! `(1 - alpha) I + alpha (J - 2 A)` is PSD of rank at most `d`. That matrix is
//! `2 alpha` times `lambda I - A + J / 2` with `lambda = (1 - alpha) / (2 alpha)`.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebraic::{AlgebraicError, Angle};
use crate::graph::generators::{empty, repeat};
use crate::graph::{graph6, Graph, GraphError};
use crate::linalg::{dot, gram, psd_factor, psd_rank, LinalgError, SymMatrix};
use crate::report;
use crate::spectral_order::{enumerate_all, exact_radius_eq, KOrderResult, SpectralOrderError};

/// `| ||v|| - 1 |` allowed by [`validate`].
pub const NORM_TOL: f64 = 1e-9;
/// `| |<v_i, v_j>| - alpha |` allowed by [`validate`].
pub const PRODUCT_TOL: f64 = 1e-8;
/// Largest vertex count accepted by [`brute_oracle`].
pub const ORACLE_CAP: usize = 8;

#[derive(Debug, Error)]
pub enum EquiangularError {
    #[error("graph is incompatible with the angle: Gram matrix is not PSD (min eigenvalue {min_eigenvalue})")]
    NotPsd { min_eigenvalue: f64 },
    #[error("H must have k = {k} vertices, found {found}")]
    WrongOrder { k: usize, found: usize },
    #[error("d = {d} must be at least k = {k}")]
    DimensionTooSmall { d: usize, k: usize },
    #[error("k must be at least 2")]
    OrderTooSmall,
    #[error("spectral radius of H is not exactly lambda")]
    RadiusMismatch,
    #[error("construction needs {rank} dimensions, more than d = {d}")]
    RankTooLarge { rank: usize, d: usize },
    #[error("nmax = {0} exceeds the oracle cap {ORACLE_CAP}")]
    AboveCap(usize),
    #[error("malformed vectors file: {0}")]
    Format(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    SpectralOrder(#[from] SpectralOrderError),
    #[error(transparent)]
    Algebraic(#[from] AlgebraicError),
}

/// Unit vectors in `R^d`; the on-disk `vectors.json` layout.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LineConfig {
    pub d: usize,
    pub alpha: f64,
    pub vectors: Vec<Vec<f64>>,
}

impl LineConfig {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn to_json(&self) -> String {
        report::to_json(self)
    }

    pub fn from_json(text: &str) -> Result<Self, EquiangularError> {
        let c: LineConfig =
            serde_json::from_str(text).map_err(|e| EquiangularError::Format(e.to_string()))?;
        if let Some((i, v)) = c.vectors.iter().enumerate().find(|(_, v)| v.len() != c.d) {
            return Err(EquiangularError::Format(format!(
                "vector {i} has length {}, expected d = {}",
                v.len(),
                c.d
            )));
        }
        if c.vectors.iter().flatten().any(|x| !x.is_finite()) {
            return Err(EquiangularError::Format("non-finite coordinate".into()));
        }
        Ok(c)
    }

    /// Gram matrix of the vectors.
    pub fn gram(&self) -> SymMatrix {
        gram(&self.vectors)
    }
}

/// Both Gram forms of a graph and the PSD / rank verdict.
#[derive(Clone, Debug, Serialize)]
pub struct GramReport {
    #[serde(serialize_with = "ser_graph6")]
    pub graph: Graph,
    /// `lambda I - A + J / 2`.
    pub matrix: SymMatrix,
    /// `(1 - alpha) I + alpha (J - 2 A)`.
    pub unit_matrix: SymMatrix,
    pub is_psd: bool,
    pub rank: usize,
    pub min_eigenvalue: f64,
    pub unit_is_psd: bool,
    pub unit_rank: usize,
    pub unit_min_eigenvalue: f64,
    pub tolerance: f64,
}

pub(crate) fn ser_graph6<S: serde::Serializer>(g: &Graph, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&graph6::encode(g))
}

/// `lambda I - A_G + J / 2`.
pub fn scaled_gram(g: &Graph, lambda: f64) -> SymMatrix {
    SymMatrix::from_fn(g.n(), |i, j| {
        if i == j {
            lambda + 0.5
        } else if g.has_edge(i, j) {
            -0.5
        } else {
            0.5
        }
    })
}

/// `(1 - alpha) I + alpha (J - 2 A_G)`.
pub fn unit_gram(g: &Graph, alpha: f64) -> SymMatrix {
    SymMatrix::from_fn(g.n(), |i, j| {
        if i == j {
            1.0
        } else if g.has_edge(i, j) {
            -alpha
        } else {
            alpha
        }
    })
}

pub fn gram_from_graph(g: &Graph, angle: &Angle, tol: f64) -> Result<GramReport, EquiangularError> {
    let matrix = scaled_gram(g, angle.lambda_f64());
    let unit_matrix = unit_gram(g, angle.alpha_f64());
    let s = psd_rank(&matrix, tol)?;
    let u = psd_rank(&unit_matrix, tol)?;
    Ok(GramReport {
        graph: g.clone(),
        matrix,
        unit_matrix,
        is_psd: s.is_psd,
        rank: s.rank,
        min_eigenvalue: s.min_eigenvalue,
        unit_is_psd: u.is_psd,
        unit_rank: u.rank,
        unit_min_eigenvalue: u.min_eigenvalue,
        tolerance: tol,
    })
}

/// Unit vectors realising `G` at angle `alpha`, in `R^rank`.
pub fn lines_from_graph(
    g: &Graph,
    angle: &Angle,
    tol: f64,
) -> Result<LineConfig, EquiangularError> {
    let report = gram_from_graph(g, angle, tol)?;
    if !report.is_psd {
        return Err(EquiangularError::NotPsd {
            min_eigenvalue: report.min_eigenvalue,
        });
    }
    let vectors = match psd_factor(&report.unit_matrix, tol) {
        Ok(v) => v,
        Err(LinalgError::NotPsd { min_eigenvalue, .. }) => {
            return Err(EquiangularError::NotPsd { min_eigenvalue })
        }
        Err(e) => return Err(e.into()),
    };
    let d = vectors.first().map_or(0, Vec::len);
    Ok(LineConfig {
        d,
        alpha: angle.alpha_f64(),
        vectors,
    })
}

/// `floor(k (d - 1) / (k - 1))`.
pub fn lower_bound_size(k: usize, d: usize) -> usize {
    k * (d - 1) / (k - 1)
}

/// `q = floor((d-1)/(k-1))` copies of `H` plus `(d-1) - (k-1) q` isolated vertices.
pub fn lower_bound_graph(h: &Graph, k: usize, d: usize) -> Graph {
    let q = (d - 1) / (k - 1);
    let rest = (d - 1) - (k - 1) * q;
    repeat(h, q).disjoint_union(&empty(rest))
}

/// The `floor(k (d - 1) / (k - 1))`-line configuration in `R^d` built from a
/// `k`-vertex graph `H` with spectral radius exactly `lambda`.
pub fn construct_lower_bound(
    h: &Graph,
    k: usize,
    d: usize,
    angle: &Angle,
    tol: f64,
) -> Result<LineConfig, EquiangularError> {
    if k < 2 {
        return Err(EquiangularError::OrderTooSmall);
    }
    if h.n() != k {
        return Err(EquiangularError::WrongOrder { k, found: h.n() });
    }
    if d < k {
        return Err(EquiangularError::DimensionTooSmall { d, k });
    }
    if !exact_radius_eq(h, angle.lambda())? {
        return Err(EquiangularError::RadiusMismatch);
    }
    let g = lower_bound_graph(h, k, d);
    debug_assert_eq!(g.n(), (d - 1) + (d - 1) / (k - 1));
    let mut config = lines_from_graph(&g, angle, tol)?;
    if config.d > d {
        return Err(EquiangularError::RankTooLarge { rank: config.d, d });
    }
    for v in &mut config.vectors {
        v.resize(d, 0.0);
    }
    config.d = d;
    Ok(config)
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub n: usize,
    pub d: usize,
    pub alpha: f64,
    pub max_norm_deviation: f64,
    pub max_product_deviation: f64,
    /// Numerical rank of the vectors.
    pub effective_dim: usize,
    #[serde(serialize_with = "ser_graph6")]
    pub associated_graph: Graph,
    pub violations: Vec<String>,
    pub norm_tolerance: f64,
    pub product_tolerance: f64,
    pub rank_tolerance: f64,
}

const MAX_LISTED_VIOLATIONS: usize = 20;

/// Checks unit norms, `|<v_i, v_j>| = alpha`, and `effective_dim <= d`.
pub fn validate(
    config: &LineConfig,
    angle: &Angle,
    rank_tol: f64,
) -> Result<ValidationReport, EquiangularError> {
    let alpha = angle.alpha_f64();
    let n = config.len();
    let mut violations = Vec::new();
    let note = |msg: String, list: &mut Vec<String>| {
        if list.len() < MAX_LISTED_VIOLATIONS {
            list.push(msg);
        }
    };
    for (i, v) in config.vectors.iter().enumerate() {
        if v.len() != config.d {
            note(
                format!("vector {i} has length {}, expected {}", v.len(), config.d),
                &mut violations,
            );
        }
    }
    let g = config.gram();
    let mut max_norm_deviation: f64 = 0.0;
    let mut max_product_deviation: f64 = 0.0;
    let mut assoc = Graph::empty(n);
    let mut count = 0usize;
    for i in 0..n {
        let dev = (g.get(i, i).sqrt() - 1.0).abs();
        max_norm_deviation = max_norm_deviation.max(dev);
        if !(dev <= NORM_TOL) {
            count += 1;
            note(
                format!("norm of vector {i} is {}", g.get(i, i).sqrt()),
                &mut violations,
            );
        }
        for j in i + 1..n {
            let p = g.get(i, j);
            let dev = (p.abs() - alpha).abs();
            max_product_deviation = max_product_deviation.max(dev);
            if !(dev <= PRODUCT_TOL) {
                count += 1;
                note(
                    format!("<v{i}, v{j}> = {p}, expected +-{alpha}"),
                    &mut violations,
                );
            }
            if p < 0.0 {
                assoc.add_edge(i, j)?;
            }
        }
    }
    let effective_dim = if n == 0 {
        0
    } else {
        psd_rank(&g, rank_tol)?.rank
    };
    if effective_dim > config.d {
        count += 1;
        note(
            format!(
                "vectors span {effective_dim} dimensions, more than d = {}",
                config.d
            ),
            &mut violations,
        );
    }
    if count > violations.len() {
        violations.push(format!("... {} violations in total", count));
    }
    Ok(ValidationReport {
        valid: count == 0 && violations.is_empty(),
        n,
        d: config.d,
        alpha,
        max_norm_deviation,
        max_product_deviation,
        effective_dim,
        associated_graph: assoc,
        violations,
        norm_tolerance: NORM_TOL,
        product_tolerance: PRODUCT_TOL,
        rank_tolerance: rank_tol,
    })
}

/// Regime of the maximum-size formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Regime {
    /// `k(lambda) = k` is finite: `floor(k (d - 1) / (k - 1))` for `d` beyond an unspecified threshold.
    FiniteOrder,
    /// No witness within the search bound: only the lower bound `d` is reported, `N = d + o(d)`.
    Linear,
}

#[derive(Clone, Debug, Serialize)]
pub struct NAlpha {
    pub value: usize,
    pub regime: Regime,
    pub k: Option<usize>,
    pub caveat: &'static str,
}

impl fmt::Display for NAlpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.regime {
            Regime::FiniteOrder => write!(
                f,
                "{} (k = {}; {})",
                self.value,
                self.k.unwrap_or(0),
                self.caveat
            ),
            Regime::Linear => write!(f, ">= {} (d + o(d) regime; {})", self.value, self.caveat),
        }
    }
}

/// The maximum number of lines predicted from the spectral radius order.
pub fn n_alpha_formula(d: usize, korder: &KOrderResult) -> NAlpha {
    match korder.k {
        Some(k) if k >= 2 => NAlpha {
            value: lower_bound_size(k, d),
            regime: Regime::FiniteOrder,
            k: Some(k),
            caveat: "exact only for d above a threshold depending on alpha",
        },
        _ => NAlpha {
            value: d,
            regime: Regime::Linear,
            k: None,
            caveat: "lower bound; no witness within the search bound",
        },
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleResult {
    pub n_max: usize,
    /// A graph attaining `n_max`, smallest canonical key first.
    pub witness_graph6: String,
    /// Feasible isomorphism classes per `N = 0..=nmax`.
    pub feasible_classes: Vec<usize>,
    pub tolerance: f64,
}

/// Largest `N <= nmax` such that some `N`-vertex graph has a PSD scaled Gram of rank at most `d`.
pub fn brute_oracle(
    angle: &Angle,
    d: usize,
    nmax: usize,
    tol: f64,
) -> Result<OracleResult, EquiangularError> {
    if nmax > ORACLE_CAP {
        return Err(EquiangularError::AboveCap(nmax));
    }
    let lambda = angle.lambda_f64();
    let mut n_max = 0;
    let mut witness = Graph::empty(0);
    let mut feasible_classes = vec![1];
    for n in 1..=nmax {
        let graphs = enumerate_all(n)?;
        let feasible = graphs
            .par_iter()
            .map(|g| {
                let r = psd_rank(&scaled_gram(g, lambda), tol)?;
                Ok(r.is_psd && r.rank <= d)
            })
            .collect::<Result<Vec<bool>, LinalgError>>()?;
        let count = feasible.iter().filter(|&&f| f).count();
        feasible_classes.push(count);
        if let Some(i) = feasible.iter().position(|&f| f) {
            n_max = n;
            witness = graphs[i].clone();
        }
    }
    Ok(OracleResult {
        n_max,
        witness_graph6: graph6::encode(&witness),
        feasible_classes,
        tolerance: tol,
    })
}

/// Largest `|<v_i, v_j>|` deviation from `alpha` and largest norm deviation.
pub fn deviations(config: &LineConfig, alpha: f64) -> (f64, f64) {
    let mut norm: f64 = 0.0;
    let mut prod: f64 = 0.0;
    for (i, v) in config.vectors.iter().enumerate() {
        norm = norm.max((dot(v, v).sqrt() - 1.0).abs());
        for w in &config.vectors[i + 1..] {
            prod = prod.max((dot(v, w).abs() - alpha).abs());
        }
    }
    (norm, prod)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::{complete, disjoint_union};
    use crate::linalg::DEFAULT_RANK_TOL;

    fn third() -> Angle {
        Angle::rational(1, 3).unwrap()
    }

    #[test]
    fn gram_examples() {
        let r =
            gram_from_graph(&empty(5), &Angle::rational(1, 4).unwrap(), DEFAULT_RANK_TOL).unwrap();
        assert!(r.is_psd);
        assert_eq!(r.rank, 5);
        // K2 at alpha = 1/3: [[3/2, -1/2], [-1/2, 3/2]] has eigenvalues 1 and 2
        let r = gram_from_graph(&complete(2).unwrap(), &third(), DEFAULT_RANK_TOL).unwrap();
        assert!(r.is_psd);
        assert_eq!(r.rank, 2);
        assert_eq!(r.matrix.get(0, 1), -0.5);
        // K3 at 1/3: spectrum {1/2, 2, 2}, realisable in R^3
        let r = gram_from_graph(&complete(3).unwrap(), &third(), DEFAULT_RANK_TOL).unwrap();
        assert!(r.is_psd);
        assert_eq!(r.rank, 3);
        // K5 at 1/3: the all-ones direction gives 1 - 4 + 5/2 = -1/2
        let r = gram_from_graph(&complete(5).unwrap(), &third(), DEFAULT_RANK_TOL).unwrap();
        assert!(!r.is_psd && !r.unit_is_psd);
        assert!((r.min_eigenvalue + 0.5).abs() < 1e-12);
    }

    #[test]
    fn line_examples() {
        let c =
            lines_from_graph(&empty(3), &Angle::rational(1, 2).unwrap(), DEFAULT_RANK_TOL).unwrap();
        assert_eq!((c.len(), c.d), (3, 3));
        let g = disjoint_union(&complete(2).unwrap(), &complete(2).unwrap());
        let c = lines_from_graph(&g, &third(), DEFAULT_RANK_TOL).unwrap();
        assert_eq!((c.len(), c.d), (4, 3));
        assert!(matches!(
            lines_from_graph(&complete(5).unwrap(), &third(), DEFAULT_RANK_TOL),
            Err(EquiangularError::NotPsd { .. })
        ));
    }

    #[test]
    fn constructions() {
        let cases = [
            (third(), 2, 15, 28),
            (Angle::rational(1, 5).unwrap(), 3, 11, 15),
            (Angle::rational(1, 7).unwrap(), 4, 10, 12),
        ];
        for (angle, k, d, n) in cases {
            let c = construct_lower_bound(&complete(k).unwrap(), k, d, &angle, DEFAULT_RANK_TOL)
                .unwrap();
            assert_eq!(c.len(), n);
            let v = validate(&c, &angle, DEFAULT_RANK_TOL).unwrap();
            assert!(v.valid, "{:?}", v.violations);
            assert!(v.effective_dim <= d);
        }
    }

    #[test]
    fn construction_preconditions() {
        let a = third();
        let k2 = complete(2).unwrap();
        assert!(matches!(
            construct_lower_bound(&k2, 3, 10, &a, 1e-9),
            Err(EquiangularError::WrongOrder { .. })
        ));
        assert!(matches!(
            construct_lower_bound(&complete(3).unwrap(), 3, 10, &a, 1e-9),
            Err(EquiangularError::RadiusMismatch)
        ));
        assert!(matches!(
            construct_lower_bound(&k2, 2, 1, &a, 1e-9),
            Err(EquiangularError::DimensionTooSmall { .. })
        ));
    }

    #[test]
    fn validation_flags_scaled_vector() {
        let a = third();
        let mut c =
            construct_lower_bound(&complete(2).unwrap(), 2, 15, &a, DEFAULT_RANK_TOL).unwrap();
        for x in &mut c.vectors[3] {
            *x *= 1.01;
        }
        let v = validate(&c, &a, DEFAULT_RANK_TOL).unwrap();
        assert!(!v.valid);
        assert!(v.violations.iter().any(|s| s.contains("norm of vector 3")));
        let empty_cfg = LineConfig {
            d: 3,
            alpha: 1.0 / 3.0,
            vectors: vec![],
        };
        let v = validate(&empty_cfg, &a, DEFAULT_RANK_TOL).unwrap();
        assert!(v.valid && v.n == 0);
    }

    #[test]
    fn json_round_trip() {
        let a = third();
        let c = construct_lower_bound(&complete(2).unwrap(), 2, 15, &a, DEFAULT_RANK_TOL).unwrap();
        let back = LineConfig::from_json(&c.to_json()).unwrap();
        assert_eq!(back, c);
        assert!(LineConfig::from_json(r#"{"d": 2, "alpha": 0.5, "vectors": [[1.0]]}"#).is_err());
        assert!(LineConfig::from_json("{").is_err());
    }

    #[test]
    fn oracle_small() {
        let r = brute_oracle(&Angle::rational(1, 2).unwrap(), 2, 5, DEFAULT_RANK_TOL).unwrap();
        assert_eq!(r.n_max, 3);
        assert!(brute_oracle(&third(), 3, 9, DEFAULT_RANK_TOL).is_err());
    }
}

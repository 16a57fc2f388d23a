//! Dense symmetric linear algebra and exact integer polynomial tools.

mod charpoly;
mod jacobi;
pub mod poly;
mod psd;
mod sym;

use thiserror::Error;

use crate::graph::Graph;

pub use charpoly::{bareiss_det, char_value, charpoly_exact, charpoly_exact_capped, EXACT_CAP};
pub use jacobi::{eig_sym, eig_tolerance, eigvals_sym, Spectrum};
pub use poly::{poly_divides, sturm_count, IntPolynomial, SturmChain};
pub use psd::{psd_factor, psd_rank, PsdRank, DEFAULT_RANK_TOL};
pub use sym::{dot, gram, SymMatrix};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinalgError {
    #[error("matrix rows are not all of length n")]
    NotSquare,
    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },
    #[error("matrix has non-finite entries")]
    NonFinite,
    #[error("Jacobi iteration did not converge after {sweeps} sweeps")]
    NotConverged { sweeps: usize },
    #[error("tolerance must be positive, got {0}")]
    BadTolerance(f64),
    #[error("matrix is not PSD: min eigenvalue {min_eigenvalue} < {threshold}")]
    NotPsd { min_eigenvalue: f64, threshold: f64 },
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("empty interval: lo must be < hi")]
    EmptyInterval,
    #[error("{n} vertices exceeds the exact-arithmetic cap of {cap}")]
    TooLarge { n: usize, cap: usize },
}

/// Adjacency spectrum with eigenvectors.
pub fn adjacency_spectrum(g: &Graph) -> Result<Spectrum, LinalgError> {
    eig_sym(&g.adjacency_matrix())
}

/// Adjacency eigenvalues, descending.
pub fn adjacency_eigenvalues(g: &Graph) -> Result<Vec<f64>, LinalgError> {
    eigvals_sym(&g.adjacency_matrix())
}

/// `lambda_1(G)`; 0 for the empty vertex set.
pub fn spectral_radius(g: &Graph) -> Result<f64, LinalgError> {
    Ok(adjacency_eigenvalues(g)?.first().copied().unwrap_or(0.0))
}

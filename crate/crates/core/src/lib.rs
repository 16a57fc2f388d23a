//! Equiangular line configurations, spectral radius orders of graphs, and
//! eigenvalue multiplicity bounds, with exact certificates where possible.

// `!(x <= tol)` also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod algebraic;
pub mod equiangular;
pub mod graph;
pub mod linalg;
pub mod multiplicity;
pub mod report;
pub mod spectral_order;
pub mod suite;
pub mod switching;

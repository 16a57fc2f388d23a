//! Cyclic Jacobi eigensolver for dense symmetric matrices.
//!
//! Each sweep visits every off-diagonal pair `(p, q)` in row order and applies
//! the plane rotation that zeroes `a[p][q]`, using Rutishauser's stable form of
//! the rotation angle. Sweeps continue until the off-diagonal Frobenius norm
//! drops below `1e-13 * ||M||_F`.

use serde::Serialize;

use super::{LinalgError, SymMatrix};

const MAX_SWEEPS: usize = 50;
const REL_OFF_TOL: f64 = 1e-13;

/// Eigenvalues in descending order with an aligned orthonormal eigenbasis.
#[derive(Clone, Debug, Serialize)]
pub struct Spectrum {
    pub values: Vec<f64>,
    /// `vectors[i]` is a unit eigenvector for `values[i]`.
    pub vectors: Vec<Vec<f64>>,
    /// `max_i ||M v_i - lambda_i v_i||_inf`.
    pub residual: f64,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Largest eigenvalue (`None` for the 0x0 matrix).
    pub fn top(&self) -> Option<f64> {
        self.values.first().copied()
    }

    /// `lambda_j` with 1-based `j`, matching the usual `lambda_1 >= lambda_2 >= ...`.
    pub fn nth(&self, j: usize) -> Option<f64> {
        j.checked_sub(1).and_then(|i| self.values.get(i).copied())
    }
}

/// Default accuracy target: `1e-11 * n * ||M||_inf`.
pub fn eig_tolerance(m: &SymMatrix) -> f64 {
    1e-11 * (m.n().max(1) as f64) * m.norm_inf().max(f64::MIN_POSITIVE)
}

fn off_norm(a: &[f64], n: usize) -> f64 {
    let mut s = 0.0;
    for p in 0..n {
        for q in p + 1..n {
            s += a[p * n + q] * a[p * n + q];
        }
    }
    (2.0 * s).sqrt()
}

/// Runs Jacobi sweeps in place; returns the diagonal and (optionally) the
/// accumulated rotation matrix, row-major, eigenvectors in columns.
fn jacobi(m: &SymMatrix, want_vectors: bool) -> Result<(Vec<f64>, Option<Vec<f64>>), LinalgError> {
    if !m.is_finite() {
        return Err(LinalgError::NonFinite);
    }
    let n = m.n();
    let mut a = m.as_slice().to_vec();
    let mut v = want_vectors.then(|| {
        let mut id = vec![0.0; n * n];
        for i in 0..n {
            id[i * n + i] = 1.0;
        }
        id
    });
    let target = REL_OFF_TOL * m.norm_frobenius();

    let mut sweeps = 0;
    while off_norm(&a, n) > target {
        if sweeps == MAX_SWEEPS {
            return Err(LinalgError::NotConverged { sweeps });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    let new_p = c * akp - s * akq;
                    let new_q = s * akp + c * akq;
                    a[k * n + p] = new_p;
                    a[p * n + k] = new_p;
                    a[k * n + q] = new_q;
                    a[q * n + k] = new_q;
                }
                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                if let Some(v) = v.as_mut() {
                    for k in 0..n {
                        let vkp = v[k * n + p];
                        let vkq = v[k * n + q];
                        v[k * n + p] = c * vkp - s * vkq;
                        v[k * n + q] = s * vkp + c * vkq;
                    }
                }
            }
        }
    }
    Ok(((0..n).map(|i| a[i * n + i]).collect(), v))
}

fn descending_order(values: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&i, &j| values[j].total_cmp(&values[i]));
    idx
}

/// Full eigendecomposition of a symmetric matrix.
pub fn eig_sym(m: &SymMatrix) -> Result<Spectrum, LinalgError> {
    let n = m.n();
    let (diag, v) = jacobi(m, true)?;
    let v = v.expect("vectors requested");
    let order = descending_order(&diag);
    let values: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let vectors: Vec<Vec<f64>> = order
        .iter()
        .map(|&c| (0..n).map(|k| v[k * n + c]).collect())
        .collect();
    let residual = values
        .iter()
        .zip(&vectors)
        .map(|(&lam, x)| {
            m.mul_vec(x)
                .iter()
                .zip(x)
                .map(|(mx, xi)| (mx - lam * xi).abs())
                .fold(0.0, f64::max)
        })
        .fold(0.0, f64::max);
    Ok(Spectrum {
        values,
        vectors,
        residual,
    })
}

/// Eigenvalues only, descending.
pub fn eigvals_sym(m: &SymMatrix) -> Result<Vec<f64>, LinalgError> {
    let (diag, _) = jacobi(m, false)?;
    Ok(descending_order(&diag)
        .into_iter()
        .map(|i| diag[i])
        .collect())
}

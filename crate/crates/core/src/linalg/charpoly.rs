use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{IntPolynomial, LinalgError};
use crate::graph::Graph;

/// Largest vertex count accepted by [`charpoly_exact`] by default.
pub const EXACT_CAP: usize = 16;

/// Determinant by Bareiss fraction-free elimination; every intermediate stays integral.
pub fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// `det(t I - A_G)` as an exact integer.
pub fn char_value(g: &Graph, t: &BigInt) -> BigInt {
    let n = g.n();
    let m = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        t.clone()
                    } else if g.has_edge(i, j) {
                        -BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect();
    bareiss_det(m)
}

/// `det(x I - A_G)` with exact coefficients, for `n <= EXACT_CAP`.
pub fn charpoly_exact(g: &Graph) -> Result<IntPolynomial, LinalgError> {
    charpoly_exact_capped(g, EXACT_CAP)
}

/// Evaluates at `x = 0..=n` and interpolates through Newton divided differences.
pub fn charpoly_exact_capped(g: &Graph, cap: usize) -> Result<IntPolynomial, LinalgError> {
    let n = g.n();
    if n > cap {
        return Err(LinalgError::TooLarge { n, cap });
    }
    let ys: Vec<BigRational> = (0..=n)
        .map(|k| BigRational::from(char_value(g, &BigInt::from(k))))
        .collect();
    // divided differences on nodes 0..=n; node spacing is 1
    let mut dd = ys;
    for level in 1..=n {
        for i in (level..=n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / BigInt::from(level);
        }
    }
    // expand sum_i dd[i] * prod_{m < i} (x - m), Horner from the top
    let mut coeffs = vec![dd[n].clone()];
    for i in (0..n).rev() {
        // coeffs <- coeffs * (x - i) + dd[i]
        let mut next = vec![BigRational::zero(); coeffs.len() + 1];
        let shift = BigRational::from(BigInt::from(i));
        for (k, c) in coeffs.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= c * &shift;
        }
        next[0] += &dd[i];
        coeffs = next;
    }
    let ints = coeffs
        .into_iter()
        .map(|c| {
            debug_assert!(c.is_integer());
            c.to_integer()
        })
        .collect();
    Ok(IntPolynomial::new(ints))
}

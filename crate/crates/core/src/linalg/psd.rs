use serde::Serialize;

use super::{eig_sym, eigvals_sym, LinalgError, SymMatrix};

/// Relative tolerance used for every rank / PSD decision unless overridden.
pub const DEFAULT_RANK_TOL: f64 = 1e-9;

/// Outcome of a PSD and numerical-rank test.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PsdRank {
    pub is_psd: bool,
    pub rank: usize,
    pub min_eigenvalue: f64,
    /// `max(1, ||M||_inf)`; thresholds are `tol * scale`.
    pub scale: f64,
    pub tol: f64,
}

fn classify(values: &[f64], scale: f64, tol: f64) -> PsdRank {
    let cut = tol * scale;
    let min_eigenvalue = values.last().copied().unwrap_or(0.0);
    PsdRank {
        is_psd: min_eigenvalue >= -cut,
        rank: values.iter().filter(|&&x| x > cut).count(),
        min_eigenvalue,
        scale,
        tol,
    }
}

/// PSD status and numerical rank: PSD iff `min eig >= -tol * scale`, rank counts
/// eigenvalues above `tol * scale`, with `scale = max(1, ||M||_inf)`.
pub fn psd_rank(m: &SymMatrix, tol: f64) -> Result<PsdRank, LinalgError> {
    if !(tol > 0.0) {
        return Err(LinalgError::BadTolerance(tol));
    }
    let scale = m.norm_inf().max(1.0);
    Ok(classify(&eigvals_sym(m)?, scale, tol))
}

/// Vectors `v_1..v_n` in `R^rank` with `<v_i, v_j> = M(i, j)`: the rows of
/// `Q * sqrt(Lambda)` over eigenvalues above `tol * scale`.
pub fn psd_factor(m: &SymMatrix, tol: f64) -> Result<Vec<Vec<f64>>, LinalgError> {
    if !(tol > 0.0) {
        return Err(LinalgError::BadTolerance(tol));
    }
    let scale = m.norm_inf().max(1.0);
    let spec = eig_sym(m)?;
    let info = classify(&spec.values, scale, tol);
    if !info.is_psd {
        return Err(LinalgError::NotPsd {
            min_eigenvalue: info.min_eigenvalue,
            threshold: -tol * scale,
        });
    }
    let kept: Vec<(f64, &Vec<f64>)> = spec
        .values
        .iter()
        .zip(&spec.vectors)
        .filter(|(&x, _)| x > tol * scale)
        .map(|(&x, v)| (x.sqrt(), v))
        .collect();
    Ok((0..m.n())
        .map(|i| kept.iter().map(|(s, v)| s * v[i]).collect())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::gram;
    use proptest::prelude::*;

    #[test]
    fn ones_is_rank_one() {
        let r = psd_rank(&SymMatrix::ones(3), DEFAULT_RANK_TOL).unwrap();
        assert!(r.is_psd);
        assert_eq!(r.rank, 1);
    }

    #[test]
    fn slightly_negative_is_not_psd() {
        let m = SymMatrix::from_fn(2, |i, j| match (i, j) {
            (0, 0) => 1.0,
            (1, 1) => -0.001,
            _ => 0.0,
        });
        assert!(!psd_rank(&m, 1e-9).unwrap().is_psd);
        assert!(psd_factor(&m, 1e-9).is_err());
    }

    #[test]
    fn rejects_nonpositive_tolerance() {
        assert!(psd_rank(&SymMatrix::ones(2), 0.0).is_err());
    }

    #[test]
    fn identity_factor_is_orthonormal() {
        let vs = psd_factor(&SymMatrix::identity(3), DEFAULT_RANK_TOL).unwrap();
        assert_eq!(vs.len(), 3);
        assert!(vs.iter().all(|v| v.len() == 3));
        let g = gram(&vs);
        for i in 0..3 {
            for j in 0..3 {
                assert!((g.get(i, j) - if i == j { 1.0 } else { 0.0 }).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn ones_factor_is_one_dimensional() {
        let vs = psd_factor(&SymMatrix::ones(2), DEFAULT_RANK_TOL).unwrap();
        assert!(vs.iter().all(|v| v.len() == 1));
        assert!((vs[0][0] * vs[1][0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn unit_gram_for_k2_at_one_third() {
        // (1 - a) I + a (J - 2 A) for K2, a = 1/3: [[1, -1/3], [-1/3, 1]]
        let a = 1.0 / 3.0;
        let m = SymMatrix::from_fn(2, |i, j| if i == j { 1.0 } else { -a });
        let vs = psd_factor(&m, DEFAULT_RANK_TOL).unwrap();
        let g = gram(&vs);
        assert!((g.get(0, 0) - 1.0).abs() < 1e-12);
        assert!((g.get(0, 1) + a).abs() < 1e-12);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn factor_round_trip(n in 1usize..20, k in 1usize..20, seed in any::<u64>()) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let vs: Vec<Vec<f64>> = (0..n).map(|_| (0..k).map(|_| rng.gen_range(-1.0..1.0)).collect()).collect();
            let m = gram(&vs);
            let r = psd_rank(&m, DEFAULT_RANK_TOL).unwrap();
            prop_assert!(r.is_psd);
            prop_assert!(r.rank <= k.min(n));
            let back = gram(&psd_factor(&m, DEFAULT_RANK_TOL).unwrap());
            let tol = 1e-8 * m.norm_inf().max(1.0);
            for i in 0..n {
                for j in 0..n {
                    prop_assert!((back.get(i, j) - m.get(i, j)).abs() <= tol);
                }
            }
        }
    }
}

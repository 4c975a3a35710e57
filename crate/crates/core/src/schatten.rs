//! Schatten p-norms.
//!
//! Singular values are taken as square roots of the eigenvalues of M*M with
//! clamping at zero. That route is adequate for norms at this scale; the
//! rank-sensitive services (nullspaces, least squares) use the dedicated
//! SVD instead, which resolves small singular values sharply.

use serde::Serialize;

use crate::config::Config;
use crate::eig::hermitian_eig;
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;

/// Exponent of a Schatten norm; infinity encodes the operator norm.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SchattenIndex {
    p: f64,
}

impl SchattenIndex {
    pub fn new(p: f64) -> Result<SchattenIndex> {
        if p.is_nan() || p < 1.0 {
            return Err(Error::InvalidSchattenIndex { p });
        }
        Ok(SchattenIndex { p })
    }

    pub fn operator() -> SchattenIndex {
        SchattenIndex { p: f64::INFINITY }
    }

    pub fn trace() -> SchattenIndex {
        SchattenIndex { p: 1.0 }
    }

    pub fn frobenius() -> SchattenIndex {
        SchattenIndex { p: 2.0 }
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn is_operator_norm(&self) -> bool {
        self.p.is_infinite()
    }
}

/// Singular values of M, descending, via the Gram matrix M*M.
pub fn singular_values(m: &ComplexMatrix, config: &Config) -> Result<Vec<f64>> {
    let gram = &m.adjoint() * m;
    let (vals, _) = hermitian_eig(&gram, config)?;
    let mut s: Vec<f64> = vals.iter().map(|&l| l.max(0.0).sqrt()).collect();
    s.sort_by(|a, b| b.total_cmp(a));
    Ok(s)
}

pub fn schatten_norm(m: &ComplexMatrix, idx: SchattenIndex, config: &Config) -> Result<f64> {
    let s = singular_values(m, config)?;
    let smax = s[0];
    if idx.is_operator_norm() || smax == 0.0 {
        return Ok(smax);
    }
    let p = idx.p();
    // Factor out the largest value so large p cannot overflow.
    let sum: f64 = s.iter().map(|&x| (x / smax).powf(p)).sum();
    Ok(smax * sum.powf(1.0 / p))
}

/// Operator (spectral) norm; shorthand for the Schatten-infinity norm.
pub fn operator_norm(m: &ComplexMatrix, config: &Config) -> Result<f64> {
    schatten_norm(m, SchattenIndex::operator(), config)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn cfg() -> Config {
        Config::default()
    }

    #[test]
    fn rejects_p_below_one() {
        assert!(matches!(
            SchattenIndex::new(0.5),
            Err(Error::InvalidSchattenIndex { .. })
        ));
    }

    #[test]
    fn identity_frobenius_is_sqrt_n() {
        let m = ComplexMatrix::identity(9);
        let n = schatten_norm(&m, SchattenIndex::frobenius(), &cfg()).unwrap();
        assert!((n - 3.0).abs() <= 1e-12);
    }

    #[test]
    fn diagonal_operator_norm_picks_largest() {
        let m = ComplexMatrix::diag(&[c(3.0, 0.0), c(-4.0, 0.0)]);
        let n = schatten_norm(&m, SchattenIndex::operator(), &cfg()).unwrap();
        assert!((n - 4.0).abs() <= 1e-12);
    }

    #[test]
    fn rank_one_norm_is_product_of_lengths() {
        // uv* has the single singular value |u||v|, identical for every p.
        let u = [c(1.0, 1.0), c(0.0, -2.0), c(0.5, 0.0)];
        let vv = [c(2.0, 0.0), c(0.0, 1.0)];
        let m = ComplexMatrix::from_fn(3, 2, |i, j| u[i] * vv[j].conj());
        let lu: f64 = u.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let lv: f64 = vv.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for p in [1.0, 1.5, 2.0, 7.0, f64::INFINITY] {
            let n = schatten_norm(&m, SchattenIndex::new(p).unwrap(), &cfg()).unwrap();
            assert!(
                (n - lu * lv).abs() <= 1e-10 * lu * lv,
                "p={p}: {n} vs {}",
                lu * lv
            );
        }
    }

    #[test]
    fn norm_is_monotone_in_p() {
        let m = ComplexMatrix::from_fn(4, 4, |i, j| c((i + 2 * j) as f64 * 0.3 - 1.0, 0.4));
        let mut prev = f64::INFINITY;
        // p=1 dominates, operator norm is smallest.
        for p in [1.0, 1.5, 2.0, 3.0, 10.0, f64::INFINITY] {
            let n = schatten_norm(&m, SchattenIndex::new(p).unwrap(), &cfg()).unwrap();
            assert!(n <= prev + 1e-10, "norm increased from p order: {n} > {prev}");
            prev = n;
        }
    }

    #[test]
    fn frobenius_matches_entrywise() {
        let m = ComplexMatrix::from_fn(3, 5, |i, j| c(i as f64 - 1.0, j as f64 * 0.5));
        let n = schatten_norm(&m, SchattenIndex::frobenius(), &cfg()).unwrap();
        assert!((n - m.norm_fro()).abs() <= 1e-10 * m.norm_fro());
    }

    #[test]
    fn zero_matrix_all_norms_zero() {
        let m = ComplexMatrix::zeros(2, 3);
        for p in [1.0, 2.0, f64::INFINITY] {
            let n = schatten_norm(&m, SchattenIndex::new(p).unwrap(), &cfg()).unwrap();
            assert_eq!(n, 0.0);
        }
    }
}

//! Commutator approximation in Schatten norms.
//!
//! The Frobenius case of best approximation by AX - XC is a linear least
//! squares problem and is solved exactly. Operator-norm margins for the
//! identity-minus-commutator inequalities are evaluated directly, and the
//! distance from the identity to the commutator range is reported as an
//! exact Frobenius value plus a searched operator-norm upper bound; the
//! search explores, it proves nothing.

use rand::Rng;
use serde::Serialize;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::kron::{unvec, vec as vec_of};
use crate::matrix::ComplexMatrix;
use crate::randgen::complex_gaussian;
use crate::schatten::{operator_norm, SchattenIndex};
use crate::solve::sylvester_operator;
use crate::svd::least_squares_min_norm;

/// Best approximation of B by AX - XC in a fixed Schatten norm.
#[derive(Clone, Debug, Serialize)]
pub struct ApproxResult {
    pub x_opt: ComplexMatrix,
    /// Norm of B - (A X_opt - X_opt C), recomputed by substitution.
    pub residual: f64,
    /// The norm the residual is measured in.
    pub norm: SchattenIndex,
    /// Norm of B itself, the right side of the inequality under test.
    pub lower_bound_rhs: f64,
}

/// Frobenius-optimal approximation of B by AX - XC. A is n x n, C is
/// m x m, B is n x m; the minimizer comes from the minimum-norm least
/// squares solution of the vectorized system.
pub fn best_commutator_approx_frobenius(
    a: &ComplexMatrix,
    c: &ComplexMatrix,
    b: &ComplexMatrix,
    config: &Config,
) -> Result<ApproxResult> {
    if !a.is_square() || !c.is_square() || b.rows() != a.rows() || b.cols() != c.rows() {
        return Err(Error::DimensionMismatch(format!(
            "approximation wants A {0}x{0}, C {1}x{1}, B {0}x{1}; got A {2}x{3}, C {4}x{5}, B {6}x{7}",
            a.rows(),
            c.rows(),
            a.rows(),
            a.cols(),
            c.rows(),
            c.cols(),
            b.rows(),
            b.cols(),
        )));
    }
    let op = sylvester_operator(a, c);
    let (xv, _) = least_squares_min_norm(&op, &vec_of(b), config.rank_tol, config)?;
    let x_opt = unvec(&xv, a.rows(), c.rows());
    let residual = (b - &(&(a * &x_opt) - &(&x_opt * c))).norm_fro();
    Ok(ApproxResult {
        x_opt,
        residual,
        norm: SchattenIndex::frobenius(),
        lower_bound_rhs: b.norm_fro(),
    })
}

/// Signed slack in ||I - (AX - XA)||_op >= 1: nonnegative wherever the
/// inequality holds. X = 0 gives exactly zero.
pub fn williams_margin(a: &ComplexMatrix, x: &ComplexMatrix, config: &Config) -> Result<f64> {
    williams_margin_pair(a, a, x, config)
}

/// Two-operator variant: signed slack in ||I - (AX - XB)||_op >= 1.
pub fn williams_margin_pair(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    x: &ComplexMatrix,
    config: &Config,
) -> Result<f64> {
    check_commutator_shapes(a, b, x)?;
    let defect = &ComplexMatrix::identity(a.rows()) - &(&(a * x) - &(x * b));
    Ok(operator_norm(&defect, config)? - 1.0)
}

/// Signed slack in ||B - (AX - XA)||_op >= ||B||_op, valid when A is
/// normal and commutes with B; both hypotheses are checked.
pub fn anderson_margin(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    x: &ComplexMatrix,
    config: &Config,
) -> Result<f64> {
    check_commutator_shapes(a, a, x)?;
    if b.rows() != a.rows() || b.cols() != a.rows() {
        return Err(Error::DimensionMismatch(
            "target must share the operator's shape".into(),
        ));
    }
    let self_comm = &(&a.adjoint() * a) - &(a * &a.adjoint());
    let normality = self_comm.norm_fro();
    let norm_scale = a.norm_fro().powi(2).max(1.0);
    if normality > config.psd_tol * norm_scale {
        return Err(Error::HypothesisViolated {
            context: "operator is not normal".into(),
            defect: normality,
        });
    }
    let commutation = (&(a * b) - &(b * a)).norm_fro();
    let comm_scale = (a.norm_fro() * b.norm_fro()).max(1.0);
    if commutation > config.psd_tol * comm_scale {
        return Err(Error::HypothesisViolated {
            context: "operator does not commute with the target".into(),
            defect: commutation,
        });
    }
    let defect = b - &(&(a * x) - &(x * a));
    Ok(operator_norm(&defect, config)? - operator_norm(b, config)?)
}

fn check_commutator_shapes(a: &ComplexMatrix, b: &ComplexMatrix, x: &ComplexMatrix) -> Result<()> {
    let square_match = a.is_square()
        && b.is_square()
        && a.rows() == b.rows()
        && x.rows() == a.rows()
        && x.cols() == a.rows();
    if !square_match {
        return Err(Error::DimensionMismatch(
            "identity-commutator margins need equal square shapes".into(),
        ));
    }
    Ok(())
}

/// Distance from the identity to the commutator range of A: the Frobenius
/// minimum is exact (linear least squares), the operator-norm figure is
/// only the best candidate found within the budget.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct IdentityDistance {
    pub frobenius_exact: f64,
    pub operator_upper: f64,
}

pub fn distance_to_identity_estimate(
    a: &ComplexMatrix,
    budget: usize,
    rng: &mut impl Rng,
    config: &Config,
) -> Result<IdentityDistance> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(
            "distance estimate needs a square operator".into(),
        ));
    }
    let n = a.rows();
    let identity = ComplexMatrix::identity(n);
    let op = sylvester_operator(a, a);
    let (xv, _) = least_squares_min_norm(&op, &vec_of(&identity), config.rank_tol, config)?;
    let x_fro = unvec(&xv, n, n);
    let defect_of = |x: &ComplexMatrix| &identity - &(&(a * x) - &(x * a));
    let frobenius_exact = defect_of(&x_fro).norm_fro();

    // Candidate 0 is the Frobenius minimizer itself; later candidates
    // perturb it at a scale that halves after every 100 rejections. Only a
    // strict improvement replaces the incumbent, so ties keep the lowest
    // candidate index.
    let mut operator_upper = operator_norm(&defect_of(&x_fro), config)?;
    let mut scale = 0.5 * (1.0 + x_fro.norm_fro());
    let mut rejections = 0usize;
    for _ in 0..budget {
        let candidate = &x_fro + &complex_gaussian(rng, n, n).scale(scale.into());
        let norm = operator_norm(&defect_of(&candidate), config)?;
        if norm < operator_upper {
            operator_upper = norm;
        } else {
            rejections += 1;
            if rejections.is_multiple_of(100) {
                scale *= 0.5;
            }
        }
    }
    Ok(IdentityDistance {
        frobenius_exact,
        operator_upper,
    })
}

/// Stationarity defect of an approximation: the Frobenius-optimal residual
/// is orthogonal to the range, which in matrix form reads A*R - RC* = 0.
pub fn stationarity_defect(
    a: &ComplexMatrix,
    c: &ComplexMatrix,
    b: &ComplexMatrix,
    result: &ApproxResult,
) -> f64 {
    let r = b - &(&(a * &result.x_opt) - &(&result.x_opt * c));
    (&(&a.adjoint() * &r) - &(&r * &c.adjoint())).norm_fro()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::randgen::{random_unitary, rng_from_seed};
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn real(rows: &[&[f64]]) -> ComplexMatrix {
        ComplexMatrix::from_real_rows(rows)
    }

    fn cfg() -> Config {
        Config::default()
    }

    #[test]
    fn zero_coefficients_leave_target_untouched() {
        let z = ComplexMatrix::zeros(2, 2);
        let b = real(&[&[1.0, 2.0], &[3.0, 4.0]]);
        let r = best_commutator_approx_frobenius(&z, &z, &b, &cfg()).unwrap();
        assert_eq!(r.x_opt.max_abs(), 0.0);
        assert!((r.residual - b.norm_fro()).abs() <= 1e-14);
        assert!((r.lower_bound_rhs - b.norm_fro()).abs() <= 1e-14);
    }

    #[test]
    fn range_member_is_matched_exactly() {
        let mut rng = rng_from_seed(5);
        let a = ComplexMatrix::diag(&[c(2.0, 0.0), c(3.0, 1.0)]);
        let cc = ComplexMatrix::diag(&[c(-1.0, 0.0), c(-2.0, 0.0), c(0.0, 1.0)]);
        let x0 = complex_gaussian(&mut rng, 2, 3);
        let b = &(&a * &x0) - &(&x0 * &cc);
        let r = best_commutator_approx_frobenius(&a, &cc, &b, &cfg()).unwrap();
        assert!(r.residual <= 1e-9 * b.norm_fro());
    }

    #[test]
    fn kernel_member_keeps_full_norm() {
        // A = C normal, B commuting: zero is a best approximant.
        let a = ComplexMatrix::diag(&[c(1.0, 0.0), c(2.0, 0.0)]);
        let b = ComplexMatrix::diag(&[c(3.0, 0.0), c(4.0, 0.0)]);
        let r = best_commutator_approx_frobenius(&a, &a, &b, &cfg()).unwrap();
        assert!((r.residual - b.norm_fro()).abs() <= 1e-9);
        let stat = stationarity_defect(&a, &a, &b, &r);
        assert!(stat <= 1e-8 * (2.0 * a.norm_fro()) * b.norm_fro());
    }

    #[test]
    fn williams_zero_candidate_is_exact() {
        let mut rng = rng_from_seed(7);
        let a = complex_gaussian(&mut rng, 4, 4);
        let margin = williams_margin(&a, &ComplexMatrix::zeros(4, 4), &cfg()).unwrap();
        assert_eq!(margin, 0.0);
    }

    #[test]
    fn williams_nonnegative_for_normal_operators() {
        let mut rng = rng_from_seed(9);
        for _ in 0..10 {
            let u = random_unitary(&mut rng, 4);
            let d = ComplexMatrix::diag(&[c(1.0, 2.0), c(-1.0, 0.5), c(0.0, -1.0), c(2.0, 0.0)]);
            let a = &(&u * &d) * &u.adjoint();
            let x = complex_gaussian(&mut rng, 4, 4);
            let margin = williams_margin(&a, &x, &cfg()).unwrap();
            assert!(margin >= -1e-10, "margin {margin} dipped below zero");
        }
    }

    #[test]
    fn anderson_with_identity_target_matches_williams() {
        let mut rng = rng_from_seed(13);
        let u = random_unitary(&mut rng, 3);
        let d = ComplexMatrix::diag(&[c(1.0, 0.0), c(2.0, 1.0), c(-1.0, -1.0)]);
        let a = &(&u * &d) * &u.adjoint();
        let x = complex_gaussian(&mut rng, 3, 3);
        let via_anderson = anderson_margin(&a, &ComplexMatrix::identity(3), &x, &cfg()).unwrap();
        let via_williams = williams_margin(&a, &x, &cfg()).unwrap();
        assert!((via_anderson - via_williams).abs() <= 1e-12);
    }

    #[test]
    fn anderson_rejects_broken_hypotheses() {
        let nil = real(&[&[0.0, 1.0], &[0.0, 0.0]]);
        let x = ComplexMatrix::zeros(2, 2);
        let out = anderson_margin(&nil, &ComplexMatrix::identity(2), &x, &cfg());
        assert!(matches!(out, Err(Error::HypothesisViolated { .. })));

        let a = ComplexMatrix::diag(&[c(1.0, 0.0), c(2.0, 0.0)]);
        let noncommuting = real(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let out = anderson_margin(&a, &noncommuting, &x, &cfg());
        assert!(matches!(out, Err(Error::HypothesisViolated { .. })));
    }

    #[test]
    fn zero_operator_distance_is_sqrt_n() {
        let mut rng = rng_from_seed(17);
        let z = ComplexMatrix::zeros(3, 3);
        let d = distance_to_identity_estimate(&z, 50, &mut rng, &cfg()).unwrap();
        assert!((d.frobenius_exact - 3f64.sqrt()).abs() <= 1e-12);
        assert!((d.operator_upper - 1.0).abs() <= 1e-10);
        assert!(d.operator_upper >= d.frobenius_exact / 3f64.sqrt() - 1e-12);
    }

    #[test]
    fn normal_operator_distance_hits_identity_norm() {
        let mut rng = rng_from_seed(19);
        let u = random_unitary(&mut rng, 3);
        let d = ComplexMatrix::diag(&[c(1.0, 1.0), c(2.0, -1.0), c(-3.0, 0.0)]);
        let a = &(&u * &d) * &u.adjoint();
        let est = distance_to_identity_estimate(&a, 30, &mut rng, &cfg()).unwrap();
        assert!(est.frobenius_exact >= 3f64.sqrt() * (1.0 - 1e-10));
        assert!(est.frobenius_exact >= 3f64 / 3f64.sqrt() - 1e-9);
    }

    #[test]
    fn search_is_seed_deterministic() {
        let a = real(&[&[0.0, 1.0], &[0.0, 0.0]]);
        let first = {
            let mut rng = rng_from_seed(23);
            distance_to_identity_estimate(&a, 200, &mut rng, &cfg()).unwrap()
        };
        let second = {
            let mut rng = rng_from_seed(23);
            distance_to_identity_estimate(&a, 200, &mut rng, &cfg()).unwrap()
        };
        assert_eq!(first.operator_upper, second.operator_upper);
        assert_eq!(first.frobenius_exact, second.frobenius_exact);
    }
}

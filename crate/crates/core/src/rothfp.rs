//! Similarity machinery for Sylvester equations.
//!
//! Solvability of NX - XA = C is equivalent to similarity of the block
//! diagonal diag(N, A) and the block triangular [N, C; 0, A], and when the
//! pair satisfies the adjoint-intertwining property (AS = SN implies
//! A*S = SN*), a solution can be read off the blocks of any invertible
//! similarity transform. This module provides the transform type, the
//! block-formula solver in both operator orders, the numerical
//! adjoint-intertwining checker, a solvability classifier, and predicates
//! for the operator classes the intertwining property is known to cover.

use num_complex::Complex64;
use serde::Serialize;

use crate::config::Config;
use crate::eig::{hermitian_eig, hermitian_power};
use crate::error::{Error, Result};
use crate::kron::{unvec, vec as vec_of};
use crate::lu::solve_linear;
use crate::matrix::ComplexMatrix;
use crate::separation::spectral_separation;
use crate::solve::{sylvester_operator, EquationSpec, Method, SolveReport, Work};
use crate::svd::{least_squares_min_norm, nullspace, nullspace_gap, svd};

/// Invertible-or-not 2x2 block operator W = [Q, R; S, T]. Shapes are
/// checked at construction; invertibility is measured, never assumed.
#[derive(Clone, Debug)]
pub struct BlockTransform {
    q: ComplexMatrix,
    r: ComplexMatrix,
    s: ComplexMatrix,
    t: ComplexMatrix,
    invertible: bool,
    sigma_min: f64,
}

impl BlockTransform {
    pub fn new(
        q: ComplexMatrix,
        r: ComplexMatrix,
        s: ComplexMatrix,
        t: ComplexMatrix,
        config: &Config,
    ) -> Result<BlockTransform> {
        let conformal = q.rows() == r.rows()
            && s.rows() == t.rows()
            && q.cols() == s.cols()
            && r.cols() == t.cols();
        if !conformal {
            return Err(Error::DimensionMismatch(format!(
                "block transform shapes {}x{}, {}x{}, {}x{}, {}x{} do not tile a 2x2 layout",
                q.rows(),
                q.cols(),
                r.rows(),
                r.cols(),
                s.rows(),
                s.cols(),
                t.rows(),
                t.cols(),
            )));
        }
        let w = ComplexMatrix::block2x2(&q, &r, &s, &t);
        let d = svd(&w, config)?;
        let sigma_min = d.sigma_min();
        let invertible = w.is_square() && sigma_min > config.rank_tol * d.sigma_max();
        Ok(BlockTransform {
            q,
            r,
            s,
            t,
            invertible,
            sigma_min,
        })
    }

    /// W = [I, X; 0, I], the canonical transform built from a solution.
    pub fn shear(x: &ComplexMatrix, config: &Config) -> Result<BlockTransform> {
        BlockTransform::new(
            ComplexMatrix::identity(x.rows()),
            x.clone(),
            ComplexMatrix::zeros(x.cols(), x.rows()),
            ComplexMatrix::identity(x.cols()),
            config,
        )
    }

    pub fn q(&self) -> &ComplexMatrix {
        &self.q
    }

    pub fn r(&self) -> &ComplexMatrix {
        &self.r
    }

    pub fn s(&self) -> &ComplexMatrix {
        &self.s
    }

    pub fn t(&self) -> &ComplexMatrix {
        &self.t
    }

    pub fn invertible(&self) -> bool {
        self.invertible
    }

    pub fn sigma_min(&self) -> f64 {
        self.sigma_min
    }

    pub fn assemble(&self) -> ComplexMatrix {
        ComplexMatrix::block2x2(&self.q, &self.r, &self.s, &self.t)
    }
}

/// Result of checking the adjoint-intertwining property for a pair (A, B):
/// every C with AC = CB should also satisfy A*C = CB*.
#[derive(Clone, Debug, Serialize)]
pub struct FPReport {
    /// Dimension of { C : AC = CB }.
    pub intertwiner_dim: usize,
    /// Frobenius-orthonormal basis of the intertwiner space.
    pub basis: Vec<ComplexMatrix>,
    /// True when worst_violation is within fp_tol; vacuously true when the
    /// intertwiner space is zero.
    pub fp_holds: bool,
    /// max over the basis of the Frobenius norm of A*C - CB*.
    pub worst_violation: f64,
    /// True when no intertwiners exist, so the property holds emptily.
    pub vacuous: bool,
    /// Smallest singular value kept above the nullspace cut.
    pub sv_above_cut: f64,
    /// Largest singular value dropped at or below the cut. A wide gap to
    /// sv_above_cut means the intertwiner dimension is decisive.
    pub sv_below_cut: f64,
}

pub fn check_fp_pair(a: &ComplexMatrix, b: &ComplexMatrix, config: &Config) -> Result<FPReport> {
    if !a.is_square() || !b.is_square() {
        return Err(Error::DimensionMismatch(
            "intertwining check needs square operators".into(),
        ));
    }
    let op = sylvester_operator(a, b);
    let vectors = nullspace(&op, config.null_tol, config)?;
    let (sv_above_cut, sv_below_cut) = nullspace_gap(&op, config.null_tol, config)?;
    let basis: Vec<ComplexMatrix> = vectors
        .iter()
        .map(|v| unvec(v, a.rows(), b.rows()))
        .collect();
    let a_adj = a.adjoint();
    let b_adj = b.adjoint();
    let worst_violation = basis
        .iter()
        .map(|c| (&(&a_adj * c) - &(c * &b_adj)).norm_fro())
        .fold(0.0, f64::max);
    let vacuous = basis.is_empty();
    Ok(FPReport {
        intertwiner_dim: basis.len(),
        basis,
        fp_holds: worst_violation <= config.fp_tol,
        worst_violation,
        vacuous,
        sv_above_cut,
        sv_below_cut,
    })
}

/// Which side the distinguished operator N takes in the equation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SimilarityOrder {
    /// Solve NX - XA = C from a W satisfying diag(N, A) W = W [N, C; 0, A].
    /// Hypothesis: the pair (A, N) has the adjoint-intertwining property.
    Na,
    /// Solve AX - XN = C from a W satisfying [A, C; 0, N] W = W diag(A, N).
    /// Hypothesis: the pair (N, A) has the adjoint-intertwining property.
    An,
}

/// Reads a solution off the blocks of an intertwining transform.
///
/// For order Na the formula is X = (S*S + Q*Q)^{-1}(Q*R + S*T); for order
/// An it is X = -(QS* + RT*)(SS* + TT*)^{-1}. Both Gram blocks are
/// invertible whenever W is, so a singular Gram block is reported as
/// evidence that W was not invertible to tolerance.
pub fn solve_from_similarity(
    n: &ComplexMatrix,
    a: &ComplexMatrix,
    c: &ComplexMatrix,
    w: &BlockTransform,
    order: SimilarityOrder,
    config: &Config,
) -> Result<SolveReport> {
    if !n.is_square() || !a.is_square() {
        return Err(Error::DimensionMismatch(
            "similarity solve needs square coefficients".into(),
        ));
    }
    let (x_rows, x_cols) = match order {
        SimilarityOrder::Na => (n.rows(), a.rows()),
        SimilarityOrder::An => (a.rows(), n.rows()),
    };
    if c.rows() != x_rows || c.cols() != x_cols {
        return Err(Error::DimensionMismatch(format!(
            "right side is {}x{}, expected {}x{}",
            c.rows(),
            c.cols(),
            x_rows,
            x_cols
        )));
    }
    if w.q.rows() != x_rows || w.t.rows() != x_cols || !w.q.is_square() || !w.t.is_square() {
        return Err(Error::DimensionMismatch(
            "transform blocks do not match the operator split".into(),
        ));
    }
    if !w.invertible {
        return Err(Error::SingularMatrix {
            context: "similarity transform".into(),
        });
    }

    let assembled = w.assemble();
    let zeros = ComplexMatrix::zeros(x_cols, x_rows);
    let (left, right) = match order {
        SimilarityOrder::Na => (
            ComplexMatrix::block2x2(n, &ComplexMatrix::zeros(x_rows, x_cols), &zeros, a),
            ComplexMatrix::block2x2(n, c, &zeros, a),
        ),
        SimilarityOrder::An => (
            ComplexMatrix::block2x2(a, c, &zeros, n),
            ComplexMatrix::block2x2(a, &ComplexMatrix::zeros(x_rows, x_cols), &zeros, n),
        ),
    };
    let defect = (&(&left * &assembled) - &(&assembled * &right)).norm_fro();
    let intertwine_scale = (left.norm_fro() + right.norm_fro()) * assembled.norm_fro();
    if defect > config.sim_tol * intertwine_scale {
        return Err(Error::NotIntertwining { defect });
    }

    let fp = match order {
        SimilarityOrder::Na => check_fp_pair(a, n, config)?,
        SimilarityOrder::An => check_fp_pair(n, a, config)?,
    };
    if !fp.fp_holds {
        return Err(Error::FpHypothesisFails {
            worst_violation: fp.worst_violation,
        });
    }

    let x = match order {
        SimilarityOrder::Na => {
            let gram = &(&w.s.adjoint() * &w.s) + &(&w.q.adjoint() * &w.q);
            let rhs = &(&w.q.adjoint() * &w.r) + &(&w.s.adjoint() * &w.t);
            solve_linear(&gram, &rhs, config.rank_tol).map_err(|e| match e {
                Error::SingularMatrix { .. } => Error::GramBlockSingular,
                other => other,
            })?
        }
        SimilarityOrder::An => {
            let gram = &(&w.s * &w.s.adjoint()) + &(&w.t * &w.t.adjoint());
            let num = &(&w.q * &w.s.adjoint()) + &(&w.r * &w.t.adjoint());
            // X G = -num transposes to G^T X^T = -num^T.
            let xt = solve_linear(
                &gram.transpose(),
                &num.scale(Complex64::new(-1.0, 0.0)).transpose(),
                config.rank_tol,
            )
            .map_err(|e| match e {
                Error::SingularMatrix { .. } => Error::GramBlockSingular,
                other => other,
            })?;
            xt.transpose()
        }
    };

    let (spec, diagnostics) = match order {
        SimilarityOrder::Na => (
            EquationSpec::Sylvester {
                a: n.clone(),
                b: a.clone(),
                c: c.clone(),
            },
            spectral_separation(n, a, config)?,
        ),
        SimilarityOrder::An => (
            EquationSpec::Sylvester {
                a: a.clone(),
                b: n.clone(),
                c: c.clone(),
            },
            spectral_separation(a, n, config)?,
        ),
    };
    let residual_fro = spec.residual(&x);
    Ok(SolveReport {
        x,
        residual_fro,
        method: Method::Similarity,
        diagnostics,
        work: Work {
            rank: Some(fp.intertwiner_dim),
            ..Work::default()
        },
    })
}

/// Certifies a solution of AX - XB = C as a similarity witness. The
/// returned W = [I, X; 0, I] conjugates the block diagonal into the block
/// triangular form: W^{-1} diag(A, B) W = [A, C; 0, B], with the inverse
/// [I, -X; 0, I] exact.
pub fn roth_similarity_from_solution(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    c: &ComplexMatrix,
    x: &ComplexMatrix,
    config: &Config,
) -> Result<BlockTransform> {
    let spec = EquationSpec::Sylvester {
        a: a.clone(),
        b: b.clone(),
        c: c.clone(),
    };
    spec.validate()?;
    if (x.rows(), x.cols()) != spec.solution_shape() {
        return Err(Error::DimensionMismatch(format!(
            "candidate is {}x{}, expected {}x{}",
            x.rows(),
            x.cols(),
            spec.solution_shape().0,
            spec.solution_shape().1
        )));
    }
    let residual = spec.residual(x);
    if residual > config.sim_tol * spec.scale(x) {
        return Err(Error::NotASolution { residual });
    }
    BlockTransform::shear(x, config)
}

/// Solvability classification of AX - XB = C.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Solvability {
    Unique,
    SolvableNonunique,
    Unsolvable,
}

#[derive(Clone, Debug, Serialize)]
pub struct SolvabilityReport {
    pub verdict: Solvability,
    /// The unique solution, a minimum-norm solution, or the least-squares
    /// minimizer, per the verdict.
    pub witness: ComplexMatrix,
    /// Substitution residual of the witness.
    pub residual: f64,
    /// Numerical rank of the Kronecker operator.
    pub rank: usize,
    /// Nullity: dimension of the homogeneous solution space.
    pub nullity: usize,
}

pub fn is_solvable(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    c: &ComplexMatrix,
    config: &Config,
) -> Result<SolvabilityReport> {
    let spec = EquationSpec::Sylvester {
        a: a.clone(),
        b: b.clone(),
        c: c.clone(),
    };
    spec.validate()?;
    let op = sylvester_operator(a, b);
    let (xv, rank) = least_squares_min_norm(&op, &vec_of(c), config.rank_tol, config)?;
    let witness = unvec(&xv, a.rows(), b.rows());
    let residual = spec.residual(&witness);
    let total = op.cols();
    let verdict = if rank == total {
        Solvability::Unique
    } else if residual <= config.solve_tol * spec.scale(&witness) {
        Solvability::SolvableNonunique
    } else {
        Solvability::Unsolvable
    };
    Ok(SolvabilityReport {
        verdict,
        witness,
        residual,
        rank,
        nullity: total - rank,
    })
}

/// Operator class to test for. Construct through the checked builders so
/// the parameter ranges hold.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ClassQuery {
    Normal,
    Hyponormal,
    PHyponormal { p: f64 },
    KQuasihyponormal { k: u32 },
    Quasihyponormal,
}

impl ClassQuery {
    pub fn normal() -> ClassQuery {
        ClassQuery::Normal
    }

    pub fn hyponormal() -> ClassQuery {
        ClassQuery::Hyponormal
    }

    pub fn quasihyponormal() -> ClassQuery {
        ClassQuery::Quasihyponormal
    }

    pub fn p_hyponormal(p: f64) -> Result<ClassQuery> {
        if !(p > 0.0 && p <= 1.0) {
            return Err(Error::HypothesisViolated {
                context: "p-hyponormal index must lie in (0, 1]".into(),
                defect: p,
            });
        }
        Ok(ClassQuery::PHyponormal { p })
    }

    pub fn k_quasihyponormal(k: u32) -> Result<ClassQuery> {
        if k == 0 {
            return Err(Error::HypothesisViolated {
                context: "k-quasihyponormal order must be positive".into(),
                defect: 0.0,
            });
        }
        Ok(ClassQuery::KQuasihyponormal { k })
    }

    pub fn name(&self) -> String {
        match self {
            ClassQuery::Normal => "normal".into(),
            ClassQuery::Hyponormal => "hyponormal".into(),
            ClassQuery::PHyponormal { p } => format!("{p}-hyponormal"),
            ClassQuery::KQuasihyponormal { k } => format!("{k}-quasihyponormal"),
            ClassQuery::Quasihyponormal => "quasihyponormal".into(),
        }
    }
}

/// Verdict of a class membership test.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ClassReport {
    pub holds: bool,
    /// Minimum eigenvalue of the class-defining Hermitian test matrix; for
    /// normality, minus the largest eigenvalue magnitude of the
    /// self-commutator. Membership allows margins down to -cut.
    pub margin: f64,
    /// Absolute tolerance the margin was compared against.
    pub cut: f64,
}

fn matrix_power(a: &ComplexMatrix, k: u32) -> ComplexMatrix {
    let mut out = ComplexMatrix::identity(a.rows());
    for _ in 0..k {
        out = &out * a;
    }
    out
}

pub fn check_operator_class(
    a: &ComplexMatrix,
    query: ClassQuery,
    config: &Config,
) -> Result<ClassReport> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(
            "class predicates need a square operator".into(),
        ));
    }
    // Re-validate so raw enum construction cannot smuggle bad parameters.
    match query {
        ClassQuery::PHyponormal { p } => {
            ClassQuery::p_hyponormal(p)?;
        }
        ClassQuery::KQuasihyponormal { k } => {
            ClassQuery::k_quasihyponormal(k)?;
        }
        _ => {}
    }
    let self_comm = &(&a.adjoint() * a) - &(a * &a.adjoint());
    let (holds, margin, cut) = match query {
        ClassQuery::Normal => {
            let (vals, _) = hermitian_eig(&self_comm, config)?;
            let spread = vals
                .iter()
                .map(|v| v.abs())
                .fold(0.0, f64::max);
            let cut = config.psd_tol * a.norm_fro().powi(2).max(1.0);
            (spread <= cut, -spread, cut)
        }
        ClassQuery::Hyponormal => {
            let (vals, _) = hermitian_eig(&self_comm, config)?;
            let margin = vals[0];
            let cut = config.psd_tol * a.norm_fro().powi(2).max(1.0);
            (margin >= -cut, margin, cut)
        }
        ClassQuery::PHyponormal { p } => {
            let gram_right = &a.adjoint() * a;
            let gram_left = a * &a.adjoint();
            let p_right = hermitian_power(&gram_right, 2.0 * p, config)?;
            let p_left = hermitian_power(&gram_left, 2.0 * p, config)?;
            let diff = &p_right - &p_left;
            let (vals, _) = hermitian_eig(&diff, config)?;
            let margin = vals[0];
            let cut = config.psd_tol * p_right.norm_fro().max(p_left.norm_fro()).max(1.0);
            (margin >= -cut, margin, cut)
        }
        ClassQuery::KQuasihyponormal { k } => quasi_margin(a, &self_comm, k, config)?,
        ClassQuery::Quasihyponormal => quasi_margin(a, &self_comm, 1, config)?,
    };
    Ok(ClassReport { holds, margin, cut })
}

fn quasi_margin(
    a: &ComplexMatrix,
    self_comm: &ComplexMatrix,
    k: u32,
    config: &Config,
) -> Result<(bool, f64, f64)> {
    let ak = matrix_power(a, k);
    let test = &(&ak.adjoint() * self_comm) * &ak;
    let (vals, _) = hermitian_eig(&test, config)?;
    let margin = vals[0];
    let cut = config.psd_tol
        * (ak.norm_fro().powi(2) * self_comm.norm_fro()).max(1.0);
    Ok((margin >= -cut, margin, cut))
}

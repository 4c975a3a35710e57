//! Solver for A*XA + tAXA = Y with t > 0. The left side factors as
//! (A* + tA) X A, so the equation splits into two ordinary linear solves
//! when both A* + tA and A are invertible. When either factor is singular
//! the solver falls back to a Kronecker least-squares formulation and
//! reports the minimum-norm solution, or rejects an inconsistent system.

use crate::config::Config;
use crate::error::{Error, Result};
use crate::kron::{kron, unvec, vec as vec_of};
use crate::lu::Lu;
use crate::matrix::ComplexMatrix;
use crate::separation::spectral_separation;
use crate::solve::{EquationSpec, Method, SolveReport, Work};
use crate::svd::least_squares_min_norm;

pub fn solve_monkeypox(
    a: &ComplexMatrix,
    t: f64,
    y: &ComplexMatrix,
    tol: f64,
    config: &Config,
) -> Result<SolveReport> {
    let spec = EquationSpec::Monkeypox {
        a: a.clone(),
        t,
        y: y.clone(),
    };
    spec.validate()?;
    let n = a.rows();
    let s = &a.adjoint() + &a.scale(t.into());
    let diagnostics = spectral_separation(&s, a, config)?;

    let factored = Lu::factor(&s, config.rank_tol).and_then(|lu_s| {
        let z = lu_s.solve(y);
        // X A = Z transposes to A^T X^T = Z^T.
        let lu_at = Lu::factor(&a.transpose(), config.rank_tol)?;
        Ok(lu_at.solve(&z.transpose()).transpose())
    });
    match factored {
        Ok(x) => {
            let residual_fro = spec.residual(&x);
            Ok(SolveReport {
                x,
                residual_fro,
                method: Method::MonkeypoxFactor,
                diagnostics,
                work: Work::default(),
            })
        }
        Err(Error::SingularMatrix { .. }) => {
            // Singular factor: pose vec(S X A) = (A^T kron S) vec(X) = vec(Y)
            // and take the minimum-norm least-squares solution.
            let op = kron(&a.transpose(), &s);
            let rhs = vec_of(y);
            let (xv, rank) = least_squares_min_norm(&op, &rhs, config.null_tol, config)?;
            let x = unvec(&xv, n, n);
            let residual_fro = spec.residual(&x);
            if residual_fro > tol * spec.scale(&x) {
                return Err(Error::InconsistentSystem {
                    residual: residual_fro,
                });
            }
            Ok(SolveReport {
                x,
                residual_fro,
                method: Method::MonkeypoxKronecker,
                diagnostics,
                work: Work {
                    rank: Some(rank),
                    ..Work::default()
                },
            })
        }
        Err(e) => Err(e),
    }
}

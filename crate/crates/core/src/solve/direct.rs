//! One-shot Kronecker solvers. These are the reference oracles: every
//! structured method is tested against them.

use crate::config::Config;
use crate::error::{Error, Result};
use crate::kron::{kron, unvec, vec};
use crate::lu::solve_linear;
use crate::matrix::ComplexMatrix;
use crate::separation::{pencil_spectrum, spectral_separation, SeparationReport};
use crate::solve::{EquationSpec, Method, SolveReport, Work};

/// The vectorized Sylvester operator I_m (x) A - B^T (x) I_n, whose action
/// on vec(X) is vec(AX - XB).
pub fn sylvester_operator(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let n = a.rows();
    let m = b.rows();
    let left = kron(&ComplexMatrix::identity(m), a);
    let right = kron(&b.transpose(), &ComplexMatrix::identity(n));
    &left - &right
}

/// Solve AX - XB = C by vectorization. Unique solvability is exactly the
/// disjointness of the two spectra.
pub fn solve_sylvester_direct(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    c: &ComplexMatrix,
    config: &Config,
) -> Result<SolveReport> {
    let spec = EquationSpec::Sylvester {
        a: a.clone(),
        b: b.clone(),
        c: c.clone(),
    };
    spec.validate()?;
    let op = sylvester_operator(a, b);
    let x_vec = match solve_linear(&op, &vec(c), config.rank_tol) {
        Ok(v) => v,
        Err(Error::SingularMatrix { .. }) => return Err(Error::SpectraNotDisjoint),
        Err(e) => return Err(e),
    };
    let x = unvec(&x_vec, a.rows(), b.rows());
    Ok(SolveReport {
        residual_fro: spec.residual(&x),
        x,
        method: Method::Direct,
        diagnostics: spectral_separation(a, b, config)?,
        work: Work::default(),
    })
}

/// Solve AXB - CXD = E by vectorization: (B^T (x) A - D^T (x) C) vec(X) =
/// vec(E).
pub fn solve_pencil_direct(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    c: &ComplexMatrix,
    d: &ComplexMatrix,
    e: &ComplexMatrix,
    config: &Config,
) -> Result<SolveReport> {
    let spec = EquationSpec::Pencil {
        a: a.clone(),
        b: b.clone(),
        c: c.clone(),
        d: d.clone(),
        e: e.clone(),
    };
    spec.validate()?;
    let op = &kron(&b.transpose(), a) - &kron(&d.transpose(), c);
    let x_vec = solve_linear(&op, &vec(e), config.rank_tol)?;
    let x = unvec(&x_vec, a.rows(), b.rows());

    let diagnostics = pencil_separation(a, b, c, d, config)?;
    Ok(SolveReport {
        residual_fro: spec.residual(&x),
        x,
        method: Method::Direct,
        diagnostics,
        work: Work::default(),
    })
}

/// Separation of the two pencil spectra sigma(C,A) (source side) and
/// sigma(B,D) (target side), over their finite parts.
pub(crate) fn pencil_separation(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    c: &ComplexMatrix,
    d: &ComplexMatrix,
    config: &Config,
) -> Result<SeparationReport> {
    let left = pencil_spectrum(c, a, config)?;
    let right = pencil_spectrum(b, d, config)?;
    Ok(SeparationReport::from_spectra(
        left.to_spectrum(),
        right.to_spectrum(),
        config.sep_tol,
    ))
}

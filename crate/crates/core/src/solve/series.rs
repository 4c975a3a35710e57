//! Series solvers: the Neumann-type series for the Stein equation and the
//! resolvent power series for the Sylvester equation.


use crate::config::Config;
use crate::error::{Error, Result};
use crate::eig::eigenvalues;
use crate::lu::Lu;
use crate::matrix::ComplexMatrix;
use crate::separation::{spectral_separation, SeparationReport};
use crate::solve::{EquationSpec, Method, SolveReport, Work};

/// Measured geometric decay ratio over the most recent term norms: the
/// largest of the last three consecutive ratios, reported as observed.
/// Values at or above one mean the terms are still growing; finite powers
/// of non-normal matrices can grow before they decay, so spectral radii
/// alone would be optimistic here.
fn smoothed_ratio(norms: &[f64]) -> Option<f64> {
    if norms.len() < 4 {
        return None;
    }
    let tail = &norms[norms.len() - 4..];
    let mut ratio: f64 = 0.0;
    for w in tail.windows(2) {
        if w[0] == 0.0 {
            return Some(0.0);
        }
        ratio = ratio.max(w[1] / w[0]);
    }
    Some(ratio)
}

/// Solve T1 X T2 - X = Y by X = -sum_k T1^k Y T2^k, valid when the
/// spectral radii multiply below one.
pub fn solve_stein_series(
    t1: &ComplexMatrix,
    t2: &ComplexMatrix,
    y: &ComplexMatrix,
    tol: f64,
    config: &Config,
) -> Result<SolveReport> {
    let spec = EquationSpec::Stein {
        t1: t1.clone(),
        t2: t2.clone(),
        y: y.clone(),
    };
    spec.validate()?;
    let s1 = eigenvalues(t1, config)?;
    let s2 = eigenvalues(t2, config)?;
    let product = s1.spectral_radius() * s2.spectral_radius();
    if product >= 1.0 - config.series_margin {
        return Err(Error::SpectralRadiusTooLarge { product });
    }
    let diagnostics = SeparationReport::from_spectra(s1, s2, config.sep_tol);

    let mut term = y.clone();
    let mut sum = y.clone();
    let mut norms = vec![term.norm_fro()];
    let mut terms = 1usize;
    let mut converged = false;
    while terms < config.max_terms {
        term = &(t1 * &term) * t2;
        sum = &sum + &term;
        let norm = term.norm_fro();
        norms.push(norm);
        terms += 1;
        // The geometric tail bound norm * g / (1 - g) only means anything
        // once the measured ratio is below one.
        let tail_bound = match smoothed_ratio(&norms) {
            Some(g) if g < 1.0 => norm * g / (1.0 - g),
            _ => continue,
        };
        let scale = spec.scale(&sum).max(y.norm_fro());
        if tail_bound <= tol * scale {
            converged = true;
            break;
        }
    }

    let x = -&sum;
    let residual_fro = spec.residual(&x);
    let report = SolveReport {
        residual_fro,
        method: Method::Stein,
        diagnostics,
        work: Work {
            terms,
            decay_ratio: smoothed_ratio(&norms),
            ..Work::default()
        },
        x,
    };
    if !converged && report.residual_fro > tol * spec.scale(&report.x) {
        return Err(Error::SeriesNotConverged {
            report: Box::new(report),
        });
    }
    Ok(report)
}

/// Solve AX - XB = Y by X = sum_n A^{-n-1} Y B^n, valid when sigma(A) lies
/// strictly outside a circle containing sigma(B).
pub fn solve_sylvester_power_series(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    y: &ComplexMatrix,
    tol: f64,
    config: &Config,
) -> Result<SolveReport> {
    let spec = EquationSpec::Sylvester {
        a: a.clone(),
        b: b.clone(),
        c: y.clone(),
    };
    spec.validate()?;
    let diagnostics = spectral_separation(a, b, config)?;
    let inner = diagnostics.spectrum_a.min_abs();
    let outer = diagnostics.spectrum_b.spectral_radius();
    let gap = inner - outer;
    if gap <= config.series_margin {
        return Err(Error::NotAnnulusSeparated { gap });
    }
    let a_lu = Lu::factor(a, config.rank_tol)?;

    let mut term = a_lu.solve(y);
    let mut sum = term.clone();
    let mut norms = vec![term.norm_fro()];
    let mut terms = 1usize;
    let mut converged = false;
    while terms < config.max_terms {
        term = a_lu.solve(&(&term * b));
        sum = &sum + &term;
        let norm = term.norm_fro();
        norms.push(norm);
        terms += 1;
        let tail_bound = match smoothed_ratio(&norms) {
            Some(g) if g < 1.0 => norm * g / (1.0 - g),
            _ => continue,
        };
        let scale = spec.scale(&sum).max(y.norm_fro());
        if tail_bound <= tol * scale {
            converged = true;
            break;
        }
    }

    let residual_fro = spec.residual(&sum);
    let report = SolveReport {
        residual_fro,
        method: Method::PowerSeries,
        diagnostics,
        work: Work {
            terms,
            decay_ratio: smoothed_ratio(&norms),
            ..Work::default()
        },
        x: sum,
    };
    if !converged && report.residual_fro > tol * spec.scale(&report.x) {
        return Err(Error::SeriesNotConverged {
            report: Box::new(report),
        });
    }
    Ok(report)
}

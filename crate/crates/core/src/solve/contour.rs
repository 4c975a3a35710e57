//! Resolvent contour-integral solvers.
//!
//! Both solvers integrate a resolvent product over a circle that encloses
//! the source spectrum and excludes the target spectrum, with the trapezoid
//! rule on the natural parametrization. The integrand is analytic in an
//! annulus around the circle, so the error decays geometrically in the node
//! count; nodes are doubled until the substitution residual passes.

use num_complex::Complex64;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::lu::Lu;
use crate::matrix::ComplexMatrix;
use crate::separation::spectral_separation;
use crate::solve::direct::pencil_separation;
use crate::solve::{ContourSpec, EquationSpec, Method, SolveReport, Work};

/// Smallest circle around the source points with verified clearance from
/// every target point: centroid center, radius reaching half a gap beyond
/// the source. Fails when the clearance would drop under 2 * sep_tol.
pub fn auto_circle(
    source: &[Complex64],
    target: &[Complex64],
    sep_tol: f64,
) -> Result<(Complex64, f64)> {
    assert!(!source.is_empty(), "auto_circle: empty source spectrum");
    let center = source.iter().sum::<Complex64>() / source.len() as f64;
    let r_source = source
        .iter()
        .map(|l| (l - center).norm())
        .fold(0.0, f64::max);
    let gap = target
        .iter()
        .map(|m| (m - center).norm() - r_source)
        .fold(f64::INFINITY, f64::min);
    if gap <= 2.0 * sep_tol {
        return Err(Error::NoSeparatingCircle { closest: gap });
    }
    Ok((center, r_source + gap / 2.0))
}

/// Check a user-supplied circle against the two point sets; margins are the
/// worst signed clearances (inside for the source, outside for the target).
fn verify_circle(
    center: Complex64,
    radius: f64,
    source: &[Complex64],
    target: &[Complex64],
    sep_tol: f64,
) -> Result<()> {
    let inside_margin = source
        .iter()
        .map(|l| radius - (l - center).norm())
        .fold(f64::INFINITY, f64::min);
    let outside_margin = target
        .iter()
        .map(|m| (m - center).norm() - radius)
        .fold(f64::INFINITY, f64::min);
    let worst = inside_margin.min(outside_margin);
    if worst <= sep_tol {
        return Err(Error::NoSeparatingCircle { closest: worst });
    }
    Ok(())
}

fn initial_nodes(contour: &Option<ContourSpec>, config: &Config) -> usize {
    match contour {
        Some(c) => c.nodes.max(8),
        None => config.contour_nodes_start,
    }
}

/// Solve AX - XB = C via X = (1/2 pi i) \oint (lI - A)^{-1} C (lI - B)^{-1} dl
/// over a circle enclosing sigma(A) and excluding sigma(B).
pub fn solve_sylvester_contour(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    c: &ComplexMatrix,
    contour: Option<ContourSpec>,
    config: &Config,
) -> Result<SolveReport> {
    let spec = EquationSpec::Sylvester {
        a: a.clone(),
        b: b.clone(),
        c: c.clone(),
    };
    spec.validate()?;
    let diagnostics = spectral_separation(a, b, config)?;
    let source = &diagnostics.spectrum_a.eigenvalues;
    let target = &diagnostics.spectrum_b.eigenvalues;
    let (center, radius) = match &contour {
        Some(spec) => {
            verify_circle(spec.center, spec.radius, source, target, config.sep_tol)?;
            (spec.center, spec.radius)
        }
        None => auto_circle(source, target, config.sep_tol)?,
    };

    let eval = |nodes: usize| -> Result<ComplexMatrix> {
        let mut acc = ComplexMatrix::zeros(a.rows(), b.rows());
        for k in 0..nodes {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / nodes as f64;
            let dir = Complex64::new(theta.cos(), theta.sin());
            let lambda = center + dir * radius;
            let ra = resolvent_factor(a, lambda)?;
            let rb = resolvent_factor(b, lambda)?;
            let term = (&ra.solve(c) * &rb.solve(&ComplexMatrix::identity(b.rows())))
                .scale(dir * radius);
            acc = &acc + &term;
        }
        Ok(acc.scale(Complex64::new(1.0 / nodes as f64, 0.0)))
    };

    refine_quadrature(&spec, eval, initial_nodes(&contour, config), diagnostics, config)
}

/// Solve AXB - CXD = E via
/// X = (1/2 pi i) \oint (lC - A)^{-1} E (lB - D)^{-1} dl
/// over a circle enclosing the pencil spectrum of (C, A) and excluding that
/// of (B, D). An unbounded source spectrum (singular C) admits no circle.
pub fn solve_pencil_contour(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    c: &ComplexMatrix,
    d: &ComplexMatrix,
    e: &ComplexMatrix,
    contour: Option<ContourSpec>,
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
    let left = crate::separation::pencil_spectrum(c, a, config)?;
    let right = crate::separation::pencil_spectrum(b, d, config)?;
    if left.infinite_count > 0 {
        // Part of the source spectrum sits at infinity; no circle encloses it.
        return Err(Error::NoSeparatingCircle {
            closest: f64::NEG_INFINITY,
        });
    }
    let diagnostics = pencil_separation(a, b, c, d, config)?;
    let (center, radius) = match &contour {
        Some(spec) => {
            verify_circle(
                spec.center,
                spec.radius,
                &left.finite,
                &right.finite,
                config.sep_tol,
            )?;
            (spec.center, spec.radius)
        }
        None => auto_circle(&left.finite, &right.finite, config.sep_tol)?,
    };

    let eval = |nodes: usize| -> Result<ComplexMatrix> {
        let mut acc = ComplexMatrix::zeros(a.rows(), b.rows());
        for k in 0..nodes {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / nodes as f64;
            let dir = Complex64::new(theta.cos(), theta.sin());
            let lambda = center + dir * radius;
            let rl = pencil_factor(c, a, lambda)?;
            let rr = pencil_factor(b, d, lambda)?;
            let term = (&rl.solve(e) * &rr.solve(&ComplexMatrix::identity(b.rows())))
                .scale(dir * radius);
            acc = &acc + &term;
        }
        Ok(acc.scale(Complex64::new(1.0 / nodes as f64, 0.0)))
    };

    refine_quadrature(&spec, eval, initial_nodes(&contour, config), diagnostics, config)
}

fn resolvent_factor(m: &ComplexMatrix, lambda: Complex64) -> Result<Lu> {
    let n = m.rows();
    let shifted = &ComplexMatrix::identity(n).scale(lambda) - m;
    Lu::factor(&shifted, 1e-14).map_err(|_| Error::SingularMatrix {
        context: format!("resolvent singular at quadrature node {lambda}"),
    })
}

fn pencil_factor(c: &ComplexMatrix, a: &ComplexMatrix, lambda: Complex64) -> Result<Lu> {
    let shifted = &c.scale(lambda) - a;
    Lu::factor(&shifted, 1e-14).map_err(|_| Error::SingularMatrix {
        context: format!("pencil resolvent singular at quadrature node {lambda}"),
    })
}

/// Run the node-doubling loop: evaluate, substitute, accept or refine. The
/// best candidate rides along so a budget failure still reports honestly.
fn refine_quadrature(
    spec: &EquationSpec,
    eval: impl Fn(usize) -> Result<ComplexMatrix>,
    start_nodes: usize,
    diagnostics: crate::separation::SeparationReport,
    config: &Config,
) -> Result<SolveReport> {
    let mut nodes = start_nodes.max(8);
    if nodes % 2 == 1 {
        nodes += 1;
    }
    let mut best: Option<(f64, ComplexMatrix, usize)> = None;
    let mut refinements = 0usize;
    loop {
        let x = eval(nodes)?;
        let residual = spec.residual(&x);
        if best.as_ref().is_none_or(|(r, _, _)| residual < *r) {
            best = Some((residual, x, nodes));
        }
        let (best_res, best_x, best_nodes) = best.as_ref().unwrap();
        if *best_res <= config.solve_tol * spec.scale(best_x) {
            return Ok(SolveReport {
                x: best_x.clone(),
                residual_fro: *best_res,
                method: Method::Contour,
                diagnostics,
                work: Work {
                    nodes: *best_nodes,
                    refinements,
                    ..Work::default()
                },
            });
        }
        if nodes >= config.contour_nodes_max {
            let (residual_fro, x, nodes) = best.unwrap();
            return Err(Error::QuadratureNotConverged {
                report: Box::new(SolveReport {
                    x,
                    residual_fro,
                    method: Method::Contour,
                    diagnostics,
                    work: Work {
                        nodes,
                        refinements,
                        ..Work::default()
                    },
                }),
            });
        }
        nodes *= 2;
        refinements += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real(rows: &[&[f64]]) -> ComplexMatrix {
        ComplexMatrix::from_real_rows(rows)
    }

    fn cfg() -> Config {
        Config::default()
    }

    #[test]
    fn scalar_residue() {
        // A=0, B=2: circle of radius 1 around 0 separates; 0*x - 2x = 1
        // forces x = -0.5.
        let contour = ContourSpec::new(Complex64::new(0.0, 0.0), 1.0, 32).unwrap();
        let r = solve_sylvester_contour(
            &real(&[&[0.0]]),
            &real(&[&[2.0]]),
            &real(&[&[1.0]]),
            Some(contour),
            &cfg(),
        )
        .unwrap();
        assert!((r.x[(0, 0)] - Complex64::new(-0.5, 0.0)).norm() <= 1e-10);
    }

    #[test]
    fn auto_circle_clears_target() {
        let source = [Complex64::new(0.0, 0.0), Complex64::new(0.1, 0.0)];
        let target = [Complex64::new(5.0, 0.0)];
        let (center, radius) = auto_circle(&source, &target, 1e-8).unwrap();
        for s in &source {
            assert!((s - center).norm() < radius);
        }
        for t in &target {
            assert!((t - center).norm() > radius);
        }
    }

    #[test]
    fn auto_circle_rejects_mixed_spectra() {
        let source = [Complex64::new(0.0, 0.0), Complex64::new(2.0, 0.0)];
        let target = [Complex64::new(1.0, 0.0)];
        assert!(matches!(
            auto_circle(&source, &target, 1e-8),
            Err(Error::NoSeparatingCircle { .. })
        ));
    }

    #[test]
    fn matches_direct_on_auto_contour() {
        let a = real(&[&[0.0, 1.0], &[0.0, 0.1]]);
        let b = real(&[&[5.0]]);
        let c = real(&[&[1.0], &[1.0]]);
        let via_contour = solve_sylvester_contour(&a, &b, &c, None, &cfg()).unwrap();
        let via_direct =
            crate::solve::direct::solve_sylvester_direct(&a, &b, &c, &cfg()).unwrap();
        let denom = via_direct.x.norm_fro();
        assert!(via_contour.x.max_abs_diff(&via_direct.x) <= 1e-8 * denom);
    }

    #[test]
    fn user_circle_that_misses_spectrum_is_rejected() {
        // Circle strictly between the spectra of A and B does not enclose
        // sigma(A) = {4}.
        let contour = ContourSpec::new(Complex64::new(0.0, 0.0), 1.0, 32).unwrap();
        let out = solve_sylvester_contour(
            &real(&[&[4.0]]),
            &real(&[&[9.0]]),
            &real(&[&[1.0]]),
            Some(contour),
            &cfg(),
        );
        assert!(matches!(out, Err(Error::NoSeparatingCircle { .. })));
    }

    #[test]
    fn scalar_pencil_contour() {
        // 2x - 3x = 1 in pencil form (a,b,c,d,e) = (2,1,1,3,1): x = -1.
        // The error equals the residual here, so the bound is the solver's
        // own acceptance cut solve_tol * scale = 6e-10.
        let r = solve_pencil_contour(
            &real(&[&[2.0]]),
            &real(&[&[1.0]]),
            &real(&[&[1.0]]),
            &real(&[&[3.0]]),
            &real(&[&[1.0]]),
            None,
            &cfg(),
        )
        .unwrap();
        assert!((r.x[(0, 0)] - Complex64::new(-1.0, 0.0)).norm() <= 6e-10);
        assert!(r.residual_fro <= 6e-10);
    }

    #[test]
    fn singular_source_pencil_has_no_circle() {
        // C singular puts part of sigma(C,A) at infinity.
        let c = real(&[&[1.0, 0.0], &[0.0, 0.0]]);
        let a = real(&[&[1.0, 0.0], &[0.0, 2.0]]);
        let b = ComplexMatrix::identity(2);
        let d = real(&[&[9.0, 0.0], &[0.0, 8.0]]);
        let e = ComplexMatrix::identity(2);
        assert!(matches!(
            solve_pencil_contour(&a, &b, &c, &d, &e, None, &cfg()),
            Err(Error::NoSeparatingCircle { .. })
        ));
    }
}

//! Cross-method properties of the equation solvers: every route that claims
//! an instance must produce the same X, solutions respect linearity and
//! uniqueness, and reported residuals are genuine substitution residuals.

use num_complex::Complex64;
use sylvkit_core::kron::{unvec, vec};
use sylvkit_core::randgen::{complex_gaussian, normal_with_spectrum, rng_from_seed, with_spectral_radius};
use sylvkit_core::separation::spectral_separation;
use sylvkit_core::solve::{
    solve_pencil_contour, solve_pencil_direct, solve_stein_series, solve_sylvester_contour,
    solve_sylvester_direct, solve_sylvester_exp_integral, solve_sylvester_power_series,
    sylvester_operator, ContourSpec, EquationSpec,
};
use sylvkit_core::svd::least_squares_min_norm;
use sylvkit_core::{ComplexMatrix, Config};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// A pair on which every Sylvester route applies at once: sigma(A) inside a
/// half-radius disk around 3.5 (so min |sigma(A)| >= 3 and min Re >= 3) and
/// sigma(B) inside the 0.8 disk. Gap, half-plane, and annulus all hold.
fn all_route_pair(seed: u64, n: usize, m: usize, config: &Config) -> (ComplexMatrix, ComplexMatrix) {
    let mut rng = rng_from_seed(seed);
    let values: Vec<Complex64> = (0..n)
        .map(|_| {
            let g = complex_gaussian(&mut rng, 1, 1)[(0, 0)];
            c(3.5, 0.0) + g.scale(0.5 / g.norm().max(1.0))
        })
        .collect();
    let a = normal_with_spectrum(&mut rng, &values);
    let b = with_spectral_radius(&mut rng, m, 0.8, config).expect("generator");
    (a, b)
}

fn rel_err(x: &ComplexMatrix, reference: &ComplexMatrix) -> f64 {
    (x - reference).norm_fro() / reference.norm_fro().max(1e-300)
}

#[test]
fn all_routes_agree_with_direct() {
    let config = Config::default();
    for seed in 0..12u64 {
        let n = 2 + (seed % 5) as usize;
        let m = 2 + ((seed / 5) % 5) as usize;
        let (a, b) = all_route_pair(seed, n, m, &config);
        let mut rng = rng_from_seed(1000 + seed);
        let y = complex_gaussian(&mut rng, n, m);

        let direct = solve_sylvester_direct(&a, &b, &y, &config).expect("direct");
        let contour = solve_sylvester_contour(&a, &b, &y, None, &config).expect("contour");
        let integral = solve_sylvester_exp_integral(&a, &b, &y, 1e-10, &config).expect("integral");
        let series = solve_sylvester_power_series(&a, &b, &y, 1e-10, &config).expect("series");

        assert!(rel_err(&contour.x, &direct.x) <= 1e-6, "contour seed {seed}");
        assert!(rel_err(&integral.x, &direct.x) <= 1e-6, "integral seed {seed}");
        assert!(rel_err(&series.x, &direct.x) <= 1e-6, "series seed {seed}");
    }
}

#[test]
fn solution_map_is_linear_in_rhs() {
    let config = Config::default();
    let (a, b) = all_route_pair(7, 4, 3, &config);
    let mut rng = rng_from_seed(77);
    let c1 = complex_gaussian(&mut rng, 4, 3);
    let c2 = complex_gaussian(&mut rng, 4, 3);
    let alpha = c(0.7, -1.3);

    let x1 = solve_sylvester_direct(&a, &b, &c1, &config).expect("c1").x;
    let x2 = solve_sylvester_direct(&a, &b, &c2, &config).expect("c2").x;
    let combined = &c1 + &c2.scale(alpha);
    let x12 = solve_sylvester_direct(&a, &b, &combined, &config).expect("c1+c2").x;

    let predicted = &x1 + &x2.scale(alpha);
    assert!(rel_err(&x12, &predicted) <= 1e-10);
}

#[test]
fn disjoint_spectra_solution_is_unique() {
    // Perturbing the solution in any direction must blow up the residual by
    // at least sigma_min of the Sylvester operator times the step size.
    let config = Config::default();
    let (a, b) = all_route_pair(11, 3, 3, &config);
    let mut rng = rng_from_seed(1111);
    let y = complex_gaussian(&mut rng, 3, 3);
    let spec = EquationSpec::Sylvester {
        a: a.clone(),
        b: b.clone(),
        c: y.clone(),
    };

    let report = solve_sylvester_direct(&a, &b, &y, &config).expect("direct");
    let base = spec.residual(&report.x);
    for k in 0..5 {
        let mut prng = rng_from_seed(2000 + k);
        let e = complex_gaussian(&mut prng, 3, 3);
        let e = e.scale(c(1.0 / e.norm_fro(), 0.0));
        let perturbed = &report.x + &e;
        let res = spec.residual(&perturbed);
        assert!(
            res > 1e4 * base.max(1e-300) && res > 1e-2,
            "perturbation {k} should leave the solution set: base {base:.3e}, got {res:.3e}"
        );
    }
}

#[test]
fn stein_equation_is_the_identity_pencil() {
    // T1 X T2 - X = Y is A X B - C X D = E with A=T1, B=T2, C=D=I, E=Y.
    let config = Config::default();
    for seed in 0..8u64 {
        let n = 2 + (seed % 3) as usize;
        let m = 2 + ((seed / 3) % 3) as usize;
        let mut rng = rng_from_seed(300 + seed);
        let t1 = with_spectral_radius(&mut rng, n, 0.7, &config).expect("t1");
        let t2 = with_spectral_radius(&mut rng, m, 0.7, &config).expect("t2");
        let y = complex_gaussian(&mut rng, n, m);

        let series = solve_stein_series(&t1, &t2, &y, 1e-12, &config).expect("series");
        let pencil = solve_pencil_direct(
            &t1,
            &t2,
            &ComplexMatrix::identity(n),
            &ComplexMatrix::identity(m),
            &y,
            &config,
        )
        .expect("pencil");

        assert!(
            rel_err(&series.x, &pencil.x) <= 1e-8,
            "series and pencil disagree on seed {seed}"
        );
    }
}

#[test]
fn pencil_contour_matches_pencil_direct() {
    let config = Config::default();
    for seed in 0..8u64 {
        let n = 2 + (seed % 3) as usize;
        let mut rng = rng_from_seed(500 + seed);
        // With C=D=I the left spectrum is sigma(A), around 2, and the right
        // one is the reciprocal set {1/mu : mu in sigma(B)}; keeping rho(B)
        // at 0.2 pushes the reciprocals out past modulus 5.
        let shift: Vec<Complex64> = (0..n)
            .map(|_| {
                let g = complex_gaussian(&mut rng, 1, 1)[(0, 0)];
                c(2.0, 0.0) + g.scale(0.5 / g.norm().max(1.0))
            })
            .collect();
        let a = normal_with_spectrum(&mut rng, &shift);
        let b = with_spectral_radius(&mut rng, n, 0.2, &config).expect("b");
        let e = complex_gaussian(&mut rng, n, n);
        let eye = ComplexMatrix::identity(n);

        let direct = solve_pencil_direct(&a, &b, &eye, &eye, &e, &config).expect("direct");
        let contour = solve_pencil_contour(&a, &b, &eye, &eye, &e, None, &config).expect("contour");
        assert!(
            rel_err(&contour.x, &direct.x) <= 1e-6,
            "pencil contour seed {seed}"
        );
    }
}

#[test]
fn contour_choice_does_not_change_the_answer() {
    // Any admissible circle (source inside, target outside) yields the same
    // X: the integrand is analytic between admissible contours.
    let config = Config::default();
    let (a, b) = all_route_pair(21, 4, 4, &config);
    let mut rng = rng_from_seed(2121);
    let y = complex_gaussian(&mut rng, 4, 4);

    let auto = solve_sylvester_contour(&a, &b, &y, None, &config).expect("auto");
    let tight = ContourSpec::new(c(3.5, 0.0), 1.0, 64).expect("tight circle");
    let wide = ContourSpec::new(c(3.3, 0.2), 2.0, 64).expect("wide circle");
    let x_tight = solve_sylvester_contour(&a, &b, &y, Some(tight), &config).expect("tight");
    let x_wide = solve_sylvester_contour(&a, &b, &y, Some(wide), &config).expect("wide");

    assert!(rel_err(&x_tight.x, &auto.x) <= 1e-7);
    assert!(rel_err(&x_wide.x, &auto.x) <= 1e-7);
}

#[test]
fn reported_residuals_are_substitution_residuals() {
    let config = Config::default();
    let (a, b) = all_route_pair(31, 3, 4, &config);
    let mut rng = rng_from_seed(3131);
    let y = complex_gaussian(&mut rng, 3, 4);
    let spec = EquationSpec::Sylvester {
        a: a.clone(),
        b: b.clone(),
        c: y.clone(),
    };

    let reports = [
        solve_sylvester_direct(&a, &b, &y, &config).expect("direct"),
        solve_sylvester_contour(&a, &b, &y, None, &config).expect("contour"),
        solve_sylvester_exp_integral(&a, &b, &y, 1e-10, &config).expect("integral"),
        solve_sylvester_power_series(&a, &b, &y, 1e-10, &config).expect("series"),
    ];
    for report in &reports {
        let recomputed = spec.residual(&report.x);
        let stated = report.residual_fro;
        // Bitwise agreement is not required (the solver may have evaluated
        // the defect in a different association order) but the two must be
        // the same number to high relative accuracy, never estimate vs fact.
        let denom = stated.max(recomputed).max(1e-300);
        assert!(
            (stated - recomputed).abs() / denom <= 1e-6,
            "stated {stated:.6e} vs recomputed {recomputed:.6e}"
        );
    }
}

#[test]
fn direct_solver_matches_raw_kronecker_least_squares() {
    // Independent oracle: assemble I (x) A - B^T (x) I by hand, solve the
    // stacked system by SVD, and compare.
    let config = Config::default();
    for seed in 0..6u64 {
        let (a, b) = all_route_pair(400 + seed, 3, 3, &config);
        let mut rng = rng_from_seed(4400 + seed);
        let y = complex_gaussian(&mut rng, 3, 3);

        let op = sylvester_operator(&a, &b);
        let (xv, rank) =
            least_squares_min_norm(&op, &vec(&y), config.rank_tol, &config).expect("lsq");
        assert_eq!(rank, 9, "operator is nonsingular for disjoint spectra");
        let oracle = unvec(&xv, 3, 3);

        let direct = solve_sylvester_direct(&a, &b, &y, &config).expect("direct");
        assert!(rel_err(&direct.x, &oracle) <= 1e-9, "seed {seed}");
    }
}

#[test]
fn separation_report_matches_route_applicability() {
    let config = Config::default();
    let (a, b) = all_route_pair(51, 4, 3, &config);
    let report = spectral_separation(&a, &b, &config).expect("separation");

    assert!(report.disjoint);
    assert!(report.min_gap >= 0.5);
    let margin = report.halfplane_margin.expect("square pair");
    assert!(margin >= 1.0, "construction leaves at least a unit margin");
    let ratio = report.annulus_ratio.expect("sigma(A) avoids zero");
    assert!(ratio < 1.0, "sigma(A) lies strictly outside the B disk");
}

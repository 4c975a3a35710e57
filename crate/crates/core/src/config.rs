/// Tolerances and budgets used across the toolkit.
///
/// Every stopping decision in the solvers is made against a recomputed
/// substitution residual scaled by
/// `(sum of coefficient Frobenius norms) * ||X||_F + ||RHS||_F`,
/// never against an internal estimate alone.
#[derive(Clone, Debug, serde::Serialize)]
pub struct Config {
    /// Relative backward-error contract for the eigensolver.
    pub eig_tol: f64,
    /// QR steps allowed per eigenvalue before `NoConvergence`.
    pub eig_max_sweeps: usize,
    /// Relative pivot threshold below which elimination declares singularity.
    pub rank_tol: f64,
    /// Relative tolerance for Hermitian/PSD hypothesis checks.
    pub psd_tol: f64,
    /// Relative accuracy contract for the matrix exponential.
    pub exp_tol: f64,
    /// Spectral gap below which two spectra are declared non-disjoint.
    pub sep_tol: f64,
    /// Relative singular-value threshold for nullspace extraction.
    pub null_tol: f64,
    /// Worst intertwiner violation tolerated before FP is declared broken.
    pub fp_tol: f64,
    /// Relative tolerance for similarity/intertwining checks.
    pub sim_tol: f64,
    /// Default relative target for solver substitution residuals.
    pub solve_tol: f64,
    /// Safety margin for series preconditions (spectral radius, annulus).
    pub series_margin: f64,
    /// Term budget for Stein and power-series solvers.
    pub max_terms: usize,
    /// Trapezoid node counts for contour quadrature: start, doubling to max.
    pub contour_nodes_start: usize,
    pub contour_nodes_max: usize,
    /// Gauss-Legendre panel counts for the exponential integral.
    pub panels_start: usize,
    pub panels_max: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            eig_tol: 1e-10,
            eig_max_sweeps: 40,
            rank_tol: 1e-12,
            psd_tol: 1e-9,
            exp_tol: 1e-12,
            sep_tol: 1e-8,
            null_tol: 1e-9,
            fp_tol: 1e-8,
            sim_tol: 1e-8,
            solve_tol: 1e-10,
            series_margin: 1e-6,
            max_terms: 20_000,
            contour_nodes_start: 32,
            contour_nodes_max: 4096,
            panels_start: 4,
            panels_max: 256,
        }
    }
}

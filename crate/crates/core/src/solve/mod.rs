//! Operator-equation solvers.
//!
//! Four equations are covered, each with the solution routes that apply:
//!
//! * `AX - XB = C`: direct Kronecker solve, resolvent contour integral,
//!   exponential integral, power series.
//! * `AXB - CXD = E`: Kronecker pencil solve and pencil-resolvent contour.
//! * `T1 X T2 - X = Y`: Neumann-type series.
//! * `A*XA + t AXA = Y`: factorized linear solves with a rank-revealing
//!   fallback.
//!
//! Every report carries a substitution residual: the equation is re-applied
//! to the computed X and the Frobenius defect recorded. Internal estimates
//! never stand in for it.

mod contour;
mod direct;
mod integral;
mod monkeypox;
mod series;

pub use contour::{auto_circle, solve_pencil_contour, solve_sylvester_contour};
pub use direct::{solve_pencil_direct, solve_sylvester_direct, sylvester_operator};
pub use integral::solve_sylvester_exp_integral;
pub use monkeypox::solve_monkeypox;
pub use series::{solve_stein_series, solve_sylvester_power_series};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::separation::SeparationReport;

/// Which equation to solve, with its coefficients.
#[derive(Clone, Debug)]
pub enum EquationSpec {
    /// AX - XB = C.
    Sylvester {
        a: ComplexMatrix,
        b: ComplexMatrix,
        c: ComplexMatrix,
    },
    /// AXB - CXD = E.
    Pencil {
        a: ComplexMatrix,
        b: ComplexMatrix,
        c: ComplexMatrix,
        d: ComplexMatrix,
        e: ComplexMatrix,
    },
    /// T1 X T2 - X = Y.
    Stein {
        t1: ComplexMatrix,
        t2: ComplexMatrix,
        y: ComplexMatrix,
    },
    /// A*XA + t AXA = Y, t > 0.
    Monkeypox {
        a: ComplexMatrix,
        t: f64,
        y: ComplexMatrix,
    },
}

impl EquationSpec {
    pub fn kind_name(&self) -> &'static str {
        match self {
            EquationSpec::Sylvester { .. } => "sylvester",
            EquationSpec::Pencil { .. } => "pencil",
            EquationSpec::Stein { .. } => "stein",
            EquationSpec::Monkeypox { .. } => "monkeypox",
        }
    }

    /// Shape compatibility (and positivity of the Monkeypox weight).
    pub fn validate(&self) -> Result<()> {
        let check_square = |m: &ComplexMatrix, name: &str| -> Result<()> {
            if !m.is_square() {
                return Err(Error::DimensionMismatch(format!(
                    "{name} must be square, got {}x{}",
                    m.rows(),
                    m.cols()
                )));
            }
            Ok(())
        };
        let check_rhs = |rhs: &ComplexMatrix, rows: usize, cols: usize, name: &str| -> Result<()> {
            if rhs.rows() != rows || rhs.cols() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "{name} must be {rows}x{cols}, got {}x{}",
                    rhs.rows(),
                    rhs.cols()
                )));
            }
            Ok(())
        };
        match self {
            EquationSpec::Sylvester { a, b, c } => {
                check_square(a, "A")?;
                check_square(b, "B")?;
                check_rhs(c, a.rows(), b.rows(), "C")
            }
            EquationSpec::Pencil { a, b, c, d, e } => {
                check_square(a, "A")?;
                check_square(b, "B")?;
                check_square(c, "C")?;
                check_square(d, "D")?;
                if c.rows() != a.rows() {
                    return Err(Error::DimensionMismatch(
                        "A and C must share dimension".to_string(),
                    ));
                }
                if d.rows() != b.rows() {
                    return Err(Error::DimensionMismatch(
                        "B and D must share dimension".to_string(),
                    ));
                }
                check_rhs(e, a.rows(), b.rows(), "E")
            }
            EquationSpec::Stein { t1, t2, y } => {
                check_square(t1, "T1")?;
                check_square(t2, "T2")?;
                check_rhs(y, t1.rows(), t2.rows(), "Y")
            }
            EquationSpec::Monkeypox { a, t, y } => {
                check_square(a, "A")?;
                if !t.is_finite() || *t <= 0.0 {
                    return Err(Error::HypothesisViolated {
                        context: "the weight t must be positive".to_string(),
                        defect: *t,
                    });
                }
                check_rhs(y, a.rows(), a.rows(), "Y")
            }
        }
    }

    /// Shape of the solution X.
    pub fn solution_shape(&self) -> (usize, usize) {
        match self {
            EquationSpec::Sylvester { a, b, .. } => (a.rows(), b.rows()),
            EquationSpec::Pencil { a, b, .. } => (a.rows(), b.rows()),
            EquationSpec::Stein { t1, t2, .. } => (t1.rows(), t2.rows()),
            EquationSpec::Monkeypox { a, .. } => (a.rows(), a.rows()),
        }
    }

    /// LHS(X) - RHS, the defect the reported residual is the norm of.
    pub fn defect(&self, x: &ComplexMatrix) -> ComplexMatrix {
        match self {
            EquationSpec::Sylvester { a, b, c } => &(&(a * x) - &(x * b)) - c,
            EquationSpec::Pencil { a, b, c, d, e } => &(&(&(a * x) * b) - &(&(c * x) * d)) - e,
            EquationSpec::Stein { t1, t2, y } => &(&(&(t1 * x) * t2) - x) - y,
            EquationSpec::Monkeypox { a, t, y } => {
                let axa = &(&a.adjoint() * x) * a;
                let taxa = (&(a * x) * a).scale(Complex64::new(*t, 0.0));
                &(&axa + &taxa) - y
            }
        }
    }

    pub fn residual(&self, x: &ComplexMatrix) -> f64 {
        self.defect(x).norm_fro()
    }

    /// Dimensional scale tolerances are measured against:
    /// (sum of coefficient norms) * ||X|| + ||RHS||.
    pub fn scale(&self, x: &ComplexMatrix) -> f64 {
        let xn = x.norm_fro();
        match self {
            EquationSpec::Sylvester { a, b, c } => {
                (a.norm_fro() + b.norm_fro()) * xn + c.norm_fro()
            }
            EquationSpec::Pencil { a, b, c, d, e } => {
                (a.norm_fro() * b.norm_fro() + c.norm_fro() * d.norm_fro()) * xn + e.norm_fro()
            }
            EquationSpec::Stein { t1, t2, y } => {
                (t1.norm_fro() * t2.norm_fro() + 1.0) * xn + y.norm_fro()
            }
            EquationSpec::Monkeypox { a, t, y } => {
                let an = a.norm_fro();
                (1.0 + t) * an * an * xn + y.norm_fro()
            }
        }
    }
}

/// Circular quadrature contour.
#[derive(Clone, Copy, Debug)]
pub struct ContourSpec {
    pub center: Complex64,
    pub radius: f64,
    pub nodes: usize,
}

impl Serialize for ContourSpec {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("ContourSpec", 3)?;
        st.serialize_field("center", &[self.center.re, self.center.im])?;
        st.serialize_field("radius", &self.radius)?;
        st.serialize_field("nodes", &self.nodes)?;
        st.end()
    }
}

impl ContourSpec {
    pub fn new(center: Complex64, radius: f64, nodes: usize) -> Result<ContourSpec> {
        if !radius.is_finite() || radius <= 0.0 {
            return Err(Error::DimensionMismatch(format!(
                "contour radius must be positive and finite, got {radius}"
            )));
        }
        if nodes < 8 || !nodes.is_multiple_of(2) {
            return Err(Error::DimensionMismatch(format!(
                "contour node count must be even and at least 8, got {nodes}"
            )));
        }
        Ok(ContourSpec {
            center,
            radius,
            nodes,
        })
    }
}

/// Which route produced a solution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Direct,
    Contour,
    Stein,
    ExpIntegral,
    PowerSeries,
    MonkeypoxFactor,
    MonkeypoxKronecker,
    Similarity,
}

/// Effort counters. Fields not meaningful for a method stay at zero/None.
#[derive(Clone, Copy, Debug, Default, Serialize)]
pub struct Work {
    /// Quadrature nodes evaluated at the accepted refinement level.
    pub nodes: usize,
    /// Series terms summed.
    pub terms: usize,
    /// Refinement rounds (node/panel doublings).
    pub refinements: usize,
    /// Numerical rank, when a rank-revealing fallback ran.
    pub rank: Option<usize>,
    /// Final smoothed term-decay ratio of a series method.
    pub decay_ratio: Option<f64>,
}

/// A solution plus the evidence for it.
#[derive(Clone, Debug, Serialize)]
pub struct SolveReport {
    pub x: ComplexMatrix,
    /// Frobenius norm of LHS(X) - RHS, recomputed by substitution.
    pub residual_fro: f64,
    pub method: Method,
    pub diagnostics: SeparationReport,
    pub work: Work,
}

use std::fmt;

use crate::solve::SolveReport;

/// Errors shared by every layer of the toolkit.
#[derive(Debug)]
pub enum Error {
    /// Operand shapes are not conformal for the requested operation.
    DimensionMismatch(String),
    /// A matrix was constructed with a NaN or infinite entry.
    NonFiniteEntry { row: usize, col: usize },
    /// A pivot fell below `rank_tol * ||A||_F` during elimination.
    SingularMatrix { context: String },
    /// An iteration exhausted its budget without meeting its tolerance.
    NoConvergence { context: String, budget: usize },
    /// The input to a Hermitian spectral routine was not Hermitian PSD.
    NotHermitianPsd { defect: f64 },
    /// Schatten index outside `[1, inf]`.
    InvalidSchattenIndex { p: f64 },
    /// The Kronecker operator of a Sylvester equation is singular.
    SpectraNotDisjoint,
    /// Auto contour construction could not enclose one spectrum while
    /// excluding the other; `closest` is the offending distance.
    NoSeparatingCircle { closest: f64 },
    /// No probe point made the pencil invertible.
    SingularPencil { context: String },
    /// Stein series precondition `rho(T1)*rho(T2) < 1 - margin` failed.
    SpectralRadiusTooLarge { product: f64 },
    /// Exponential-integral precondition `min Re s(A) > max Re s(B)` failed.
    NotHalfplaneSeparated { margin: f64 },
    /// Power-series precondition `min |s(A)| > max |s(B)|` failed.
    NotAnnulusSeparated { gap: f64 },
    /// Quadrature budget exhausted; the report carries the best iterate.
    QuadratureNotConverged { report: Box<SolveReport> },
    /// Series budget exhausted; the report carries the best iterate.
    SeriesNotConverged { report: Box<SolveReport> },
    /// A rank-deficient linear system admits no solution; the least-squares
    /// residual is attached.
    InconsistentSystem { residual: f64 },
    /// The supplied block transform does not intertwine the two operators.
    NotIntertwining { defect: f64 },
    /// `S*S + Q*Q` (resp. `SS* + TT*`) is singular, contradicting the
    /// invertibility of the block transform.
    GramBlockSingular,
    /// The Fuglede-Putnam hypothesis required by the similarity recovery
    /// does not hold for the pair actually used.
    FpHypothesisFails { worst_violation: f64 },
    /// The candidate X does not solve the equation it claims to solve.
    NotASolution { residual: f64 },
    /// A stated hypothesis (normality, commutation) fails its tolerance.
    HypothesisViolated { context: String, defect: f64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch(msg) => write!(f, "dimension mismatch: {msg}"),
            Error::NonFiniteEntry { row, col } => {
                write!(f, "non-finite entry at ({row}, {col})")
            }
            Error::SingularMatrix { context } => write!(f, "singular matrix in {context}"),
            Error::NoConvergence { context, budget } => {
                write!(f, "{context} did not converge within budget {budget}")
            }
            Error::NotHermitianPsd { defect } => {
                write!(f, "matrix is not Hermitian PSD (defect {defect:.3e})")
            }
            Error::InvalidSchattenIndex { p } => {
                write!(f, "Schatten index p = {p} is below 1")
            }
            Error::SpectraNotDisjoint => {
                write!(f, "spectra overlap: the Sylvester operator is singular")
            }
            Error::NoSeparatingCircle { closest } => write!(
                f,
                "no circle separates the spectra (closest excluded point at distance {closest:.3e} from the boundary)"
            ),
            Error::SingularPencil { context } => write!(f, "singular pencil: {context}"),
            Error::SpectralRadiusTooLarge { product } => write!(
                f,
                "spectral radius product {product:.6} is not below 1: Stein series diverges"
            ),
            Error::NotHalfplaneSeparated { margin } => write!(
                f,
                "spectra are not separated by a vertical strip (margin {margin:.3e})"
            ),
            Error::NotAnnulusSeparated { gap } => write!(
                f,
                "spectra are not separated by an annulus (gap {gap:.3e})"
            ),
            Error::QuadratureNotConverged { report } => write!(
                f,
                "quadrature budget exhausted at residual {:.3e}",
                report.residual_fro
            ),
            Error::SeriesNotConverged { report } => write!(
                f,
                "series budget exhausted at residual {:.3e}",
                report.residual_fro
            ),
            Error::InconsistentSystem { residual } => write!(
                f,
                "system is inconsistent: least-squares residual {residual:.3e}"
            ),
            Error::NotIntertwining { defect } => write!(
                f,
                "block transform does not intertwine the operators (defect {defect:.3e})"
            ),
            Error::GramBlockSingular => write!(
                f,
                "S*S + Q*Q is singular although W was accepted as invertible"
            ),
            Error::FpHypothesisFails { worst_violation } => write!(
                f,
                "Fuglede-Putnam hypothesis fails (worst violation {worst_violation:.3e})"
            ),
            Error::NotASolution { residual } => {
                write!(f, "candidate X is not a solution (residual {residual:.3e})")
            }
            Error::HypothesisViolated { context, defect } => {
                write!(f, "hypothesis violated: {context} (defect {defect:.3e})")
            }
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;

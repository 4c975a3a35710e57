//! Command-line error type with the exit-code policy: anything wrong with
//! the invocation or the input files exits 1, anything the solver itself
//! declares exits 2.

use std::fmt;
use std::path::PathBuf;

pub type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug)]
pub enum CliError {
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },
    UnsupportedFormat {
        path: PathBuf,
        field: String,
    },
    Usage(String),
    Solver(sylvkit_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Solver(_) => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Io { path, source } => write!(f, "{}: {source}", path.display()),
            CliError::Parse {
                path,
                line,
                message,
            } => write!(f, "{}:{line}: {message}", path.display()),
            CliError::UnsupportedFormat { path, field } => {
                write!(f, "{}: unsupported matrix market field: {field}", path.display())
            }
            CliError::Usage(message) => write!(f, "{message}"),
            CliError::Solver(err) => write!(f, "error={}: {err}", variant_name(err)),
        }
    }
}

impl From<sylvkit_core::Error> for CliError {
    fn from(err: sylvkit_core::Error) -> CliError {
        CliError::Solver(err)
    }
}

/// Stable machine-checkable name for each solver failure.
pub fn variant_name(err: &sylvkit_core::Error) -> &'static str {
    use sylvkit_core::Error::*;
    match err {
        DimensionMismatch(_) => "DimensionMismatch",
        NonFiniteEntry { .. } => "NonFiniteEntry",
        SingularMatrix { .. } => "SingularMatrix",
        NoConvergence { .. } => "NoConvergence",
        NotHermitianPsd { .. } => "NotHermitianPsd",
        InvalidSchattenIndex { .. } => "InvalidSchattenIndex",
        SpectraNotDisjoint => "SpectraNotDisjoint",
        SingularPencil { .. } => "SingularPencil",
        NoSeparatingCircle { .. } => "NoSeparatingCircle",
        SpectralRadiusTooLarge { .. } => "SpectralRadiusTooLarge",
        NotHalfplaneSeparated { .. } => "NotHalfplaneSeparated",
        NotAnnulusSeparated { .. } => "NotAnnulusSeparated",
        QuadratureNotConverged { .. } => "QuadratureNotConverged",
        SeriesNotConverged { .. } => "SeriesNotConverged",
        InconsistentSystem { .. } => "InconsistentSystem",
        NotIntertwining { .. } => "NotIntertwining",
        GramBlockSingular => "GramBlockSingular",
        FpHypothesisFails { .. } => "FpHypothesisFails",
        NotASolution { .. } => "NotASolution",
        HypothesisViolated { .. } => "HypothesisViolated",
    }
}

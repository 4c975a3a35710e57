//! Spectral geometry between two operators: the separation facts every
//! solver precondition is phrased in.

use num_complex::Complex64;
use serde::Serialize;

use crate::config::Config;
use crate::eig::{eigenvalues, Spectrum};
use crate::error::{Error, Result};
use crate::lu::Lu;
use crate::matrix::ComplexMatrix;

/// Geometric classification of two spectra.
#[derive(Clone, Debug, Serialize)]
pub struct SeparationReport {
    pub spectrum_a: Spectrum,
    pub spectrum_b: Spectrum,
    /// min over pairs |lambda_i - mu_j|.
    pub min_gap: f64,
    /// min_gap > sep_tol.
    pub disjoint: bool,
    /// min Re sigma(A) - max Re sigma(B); positive when A sits strictly to
    /// the right of B.
    pub halfplane_margin: Option<f64>,
    /// max |sigma(B)| / min |sigma(A)|; absent when sigma(A) touches zero.
    /// Below one when sigma(A) lies outside a circle containing sigma(B).
    pub annulus_ratio: Option<f64>,
}

impl SeparationReport {
    pub fn from_spectra(spectrum_a: Spectrum, spectrum_b: Spectrum, sep_tol: f64) -> Self {
        let mut min_gap = f64::INFINITY;
        for l in &spectrum_a.eigenvalues {
            for m in &spectrum_b.eigenvalues {
                min_gap = min_gap.min((l - m).norm());
            }
        }
        if !min_gap.is_finite() {
            min_gap = 0.0;
        }
        let halfplane_margin = if spectrum_a.eigenvalues.is_empty() || spectrum_b.eigenvalues.is_empty()
        {
            None
        } else {
            Some(spectrum_a.min_re() - spectrum_b.max_re())
        };
        let min_abs_a = spectrum_a.min_abs();
        let annulus_ratio = if min_abs_a > 0.0 && min_abs_a.is_finite() {
            Some(spectrum_b.spectral_radius() / min_abs_a)
        } else {
            None
        };
        SeparationReport {
            spectrum_a,
            spectrum_b,
            min_gap,
            disjoint: min_gap > sep_tol,
            halfplane_margin,
            annulus_ratio,
        }
    }
}

/// Compare the spectra of two square matrices.
pub fn spectral_separation(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    config: &Config,
) -> Result<SeparationReport> {
    let sa = eigenvalues(a, config)?;
    let sb = eigenvalues(b, config)?;
    Ok(SeparationReport::from_spectra(sa, sb, config.sep_tol))
}

/// Spectrum of the linear pencil lambda*C - A: the lambda values where the
/// pencil is singular. Finite eigenvalues are listed; directions along which
/// C is singular contribute eigenvalues at infinity, returned as a count.
#[derive(Clone, Debug)]
pub struct PencilSpectrum {
    pub finite: Vec<Complex64>,
    pub infinite_count: usize,
    pub backward_error: f64,
}

impl PencilSpectrum {
    pub fn to_spectrum(&self) -> Spectrum {
        Spectrum::new(self.finite.clone(), self.backward_error)
    }
}

/// Deterministic probe shifts used to regularize the pencil before the
/// eigenvalue transform. Fixed order keeps runs reproducible.
const PROBES: [Complex64; 8] = [
    Complex64::new(0.0, 0.0),
    Complex64::new(1.0, 0.0),
    Complex64::new(-1.0, 0.0),
    Complex64::new(0.0, 1.0),
    Complex64::new(0.0, -1.0),
    Complex64::new(0.5, 0.5),
    Complex64::new(-2.0, 0.0),
    Complex64::new(0.0, 3.0),
];

/// Eigenvalues of the pencil lambda*C - A.
///
/// Strategy: find a probe mu with mu*C - A invertible, then eigenvalues of
/// M = (mu*C - A)^{-1} C determine the pencil spectrum via lambda =
/// mu - 1/theta (theta = 0 encodes an infinite pencil eigenvalue).
pub fn pencil_spectrum(
    c: &ComplexMatrix,
    a: &ComplexMatrix,
    config: &Config,
) -> Result<PencilSpectrum> {
    assert!(a.is_square() && c.is_square(), "pencil blocks must be square");
    assert_eq!(a.rows(), c.rows(), "pencil blocks must share dimension");

    let mut factored = None;
    for mu in PROBES {
        let shifted = &c.scale(mu) - a;
        if let Ok(lu) = Lu::factor(&shifted, config.rank_tol) {
            factored = Some((mu, lu));
            break;
        }
    }
    let Some((mu, lu)) = factored else {
        return Err(Error::SingularPencil {
            context: "no probe shift makes the pencil invertible".to_string(),
        });
    };

    let m = lu.solve(c);
    let thetas = eigenvalues(&m, config)?;
    let theta_max = thetas.spectral_radius().max(1.0);
    // Eigenvalues of M at relative scale below this turn pencil eigenvalues
    // into magnitudes beyond any contour of interest; classify as infinite.
    let inf_cut = 1e-10 * theta_max;

    let mut finite = Vec::new();
    let mut infinite_count = 0usize;
    for theta in &thetas.eigenvalues {
        if theta.norm() <= inf_cut {
            infinite_count += 1;
        } else {
            finite.push(mu - Complex64::new(1.0, 0.0) / theta);
        }
    }
    Ok(PencilSpectrum {
        finite,
        infinite_count,
        backward_error: thetas.backward_error,
    })
}

//! Singular value decomposition by one-sided Jacobi, plus the rank-revealing
//! services built on it: nullspace bases, minimum-norm least squares, and
//! extreme singular values.
//!
//! One-sided Jacobi orthogonalizes columns directly, so small singular
//! values come out with high absolute accuracy. That matters here: nullspace
//! thresholds sit at 1e-9 of the largest singular value, far below the
//! sqrt(eps) noise floor a Gram-matrix route would introduce.

use num_complex::Complex64;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;

const EPS: f64 = f64::EPSILON;

pub struct Svd {
    /// Left singular vectors, one column per singular value. Columns paired
    /// with an exactly zero singular value are zero vectors, not unit ones.
    pub u: ComplexMatrix,
    /// Singular values, descending, one per column of the input. A wide
    /// matrix therefore lists at least cols - rows exact zeros.
    pub s: Vec<f64>,
    /// Right singular vectors, always a full cols x cols unitary.
    pub v: ComplexMatrix,
}

impl Svd {
    pub fn sigma_max(&self) -> f64 {
        self.s.first().copied().unwrap_or(0.0)
    }

    pub fn sigma_min(&self) -> f64 {
        self.s.last().copied().unwrap_or(0.0)
    }

    pub fn rank(&self, rel_tol: f64) -> usize {
        let cut = rel_tol * self.sigma_max();
        self.s.iter().filter(|&&x| x > cut).count()
    }
}

pub fn svd(m: &ComplexMatrix, config: &Config) -> Result<Svd> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut g = m.clone();
    let mut v = ComplexMatrix::identity(cols);

    // Columns that fall below roundoff relative to the whole matrix are
    // frozen at zero. Without the floor, two residual columns of a
    // rank-deficient input keep rotating against each other forever:
    // their mutual products never pass the relative criterion.
    let floor = (EPS * m.norm_fro()).max(f64::MIN_POSITIVE);
    let floor2 = floor * floor;

    let mut converged = false;
    // One-sided Jacobi needs a little more headroom than the Hermitian
    // sweeps; column norms spread the spectrum over a wider range.
    let budget = config.eig_max_sweeps + 20;
    for _ in 0..budget {
        let mut rotated = false;
        for p in 0..cols {
            for q in (p + 1)..cols {
                let mut app = 0.0f64;
                let mut aqq = 0.0f64;
                let mut apq = Complex64::new(0.0, 0.0);
                for i in 0..rows {
                    let gp = g[(i, p)];
                    let gq = g[(i, q)];
                    app += gp.norm_sqr();
                    aqq += gq.norm_sqr();
                    apq += gp.conj() * gq;
                }
                if app <= floor2 || aqq <= floor2 {
                    continue;
                }
                let mag = apq.norm();
                // Relative criterion: keeps tiny singular values accurate
                // down to the roundoff floor.
                if mag <= EPS * (app * aqq).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = apq / mag;
                let tau = (aqq - app) / (2.0 * mag);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let sn = t * c;
                let jpp = Complex64::new(c, 0.0);
                let jpq = Complex64::new(sn, 0.0);
                let jqp = -phase.conj() * sn;
                let jqq = phase.conj() * c;
                for i in 0..rows {
                    let gp = g[(i, p)];
                    let gq = g[(i, q)];
                    g[(i, p)] = gp * jpp + gq * jqp;
                    g[(i, q)] = gp * jpq + gq * jqq;
                }
                for i in 0..cols {
                    let vp = v[(i, p)];
                    let vq = v[(i, q)];
                    v[(i, p)] = vp * jpp + vq * jqp;
                    v[(i, q)] = vp * jpq + vq * jqq;
                }
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence {
            context: "one-sided jacobi svd sweeps".to_string(),
            budget,
        });
    }

    let mut sv: Vec<(f64, usize)> = (0..cols)
        .map(|j| {
            let norm: f64 = (0..rows).map(|i| g[(i, j)].norm_sqr()).sum::<f64>().sqrt();
            // Frozen columns hold roundoff junk; report them as exact rank
            // deficiencies rather than spurious tiny singular values.
            if norm <= floor {
                (0.0, j)
            } else {
                (norm, j)
            }
        })
        .collect();
    sv.sort_by(|a, b| b.0.total_cmp(&a.0));

    let s: Vec<f64> = sv.iter().map(|&(n, _)| n).collect();
    let mut u = ComplexMatrix::zeros(rows, cols);
    let mut vs = ComplexMatrix::zeros(cols, cols);
    for (out_j, &(norm, j)) in sv.iter().enumerate() {
        if norm > 0.0 {
            for i in 0..rows {
                u[(i, out_j)] = g[(i, j)] / norm;
            }
        }
        for i in 0..cols {
            vs[(i, out_j)] = v[(i, j)];
        }
    }
    Ok(Svd { u, s, v: vs })
}

/// Orthonormal basis of { x : M x = 0 }, one column vector per basis
/// element, thresholded at rel_tol times the largest singular value.
pub fn nullspace(m: &ComplexMatrix, rel_tol: f64, config: &Config) -> Result<Vec<ComplexMatrix>> {
    let d = svd(m, config)?;
    let smax = d.sigma_max();
    let mut basis = Vec::new();
    for (j, &s) in d.s.iter().enumerate() {
        if s <= rel_tol * smax {
            basis.push(ComplexMatrix::from_fn(m.cols(), 1, |i, _| d.v[(i, j)]));
        }
    }
    // Wide matrices are covered: s lists one value per column, so the
    // cols - rows structural zeros carry their V directions into the basis.
    Ok(basis)
}

/// Gap in the singular spectrum around the nullspace cut: (smallest kept,
/// largest dropped). Reported so callers can judge how decisive the
/// numerical rank decision was.
pub fn nullspace_gap(m: &ComplexMatrix, rel_tol: f64, config: &Config) -> Result<(f64, f64)> {
    let d = svd(m, config)?;
    let cut = rel_tol * d.sigma_max();
    let kept = d
        .s
        .iter()
        .copied()
        .filter(|&s| s > cut)
        .fold(f64::INFINITY, f64::min);
    let kept = if kept.is_finite() { kept } else { 0.0 };
    let dropped = d
        .s
        .iter()
        .copied()
        .filter(|&s| s <= cut)
        .fold(0.0, f64::max);
    Ok((kept, dropped))
}

/// Minimum-norm least-squares solution of A X = B via the pseudoinverse;
/// returns the solution and the numerical rank used.
pub fn least_squares_min_norm(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    rel_tol: f64,
    config: &Config,
) -> Result<(ComplexMatrix, usize)> {
    assert_eq!(a.rows(), b.rows(), "least squares: rhs height mismatch");
    let d = svd(a, config)?;
    let cut = rel_tol * d.sigma_max();
    let mut x = ComplexMatrix::zeros(a.cols(), b.cols());
    let mut rank = 0usize;
    for (j, &s) in d.s.iter().enumerate() {
        if s <= cut {
            continue;
        }
        rank += 1;
        // x += v_j (u_j* B) / s_j
        for col in 0..b.cols() {
            let mut proj = Complex64::new(0.0, 0.0);
            for i in 0..a.rows() {
                proj += d.u[(i, j)].conj() * b[(i, col)];
            }
            proj /= s;
            for i in 0..a.cols() {
                let delta = d.v[(i, j)] * proj;
                x[(i, col)] += delta;
            }
        }
    }
    Ok((x, rank))
}

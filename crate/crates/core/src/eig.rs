//! Eigenvalue computation.
//!
//! Two kernels live here: a shifted QR iteration on the Hessenberg form for
//! general complex matrices (eigenvalues only), and a cyclic Jacobi sweep for
//! Hermitian matrices (eigenvalues plus an orthonormal eigenbasis). Every
//! spectral precondition in the solvers goes through one of the two.

use num_complex::Complex64;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::config::Config;
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;

const EPS: f64 = f64::EPSILON;

/// Eigenvalues of a square matrix, sorted lexicographically by (re, im) so
/// that equal multisets compare equal elementwise.
#[derive(Clone, Debug)]
pub struct Spectrum {
    pub eigenvalues: Vec<Complex64>,
    /// Relative backward-error scale: each eigenvalue is exact for some
    /// M + dM with ||dM|| <= backward_error * ||M||.
    pub backward_error: f64,
}

impl Spectrum {
    pub fn new(mut eigenvalues: Vec<Complex64>, backward_error: f64) -> Spectrum {
        eigenvalues.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        Spectrum {
            eigenvalues,
            backward_error,
        }
    }

    pub fn spectral_radius(&self) -> f64 {
        self.eigenvalues.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn min_abs(&self) -> f64 {
        self.eigenvalues
            .iter()
            .map(|z| z.norm())
            .fold(f64::INFINITY, f64::min)
    }

    pub fn min_re(&self) -> f64 {
        self.eigenvalues
            .iter()
            .map(|z| z.re)
            .fold(f64::INFINITY, f64::min)
    }

    pub fn max_re(&self) -> f64 {
        self.eigenvalues
            .iter()
            .map(|z| z.re)
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

impl Serialize for Spectrum {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Spectrum", 2)?;
        let pairs: Vec<[f64; 2]> = self.eigenvalues.iter().map(|z| [z.re, z.im]).collect();
        st.serialize_field("eigenvalues", &pairs)?;
        st.serialize_field("backward_error", &self.backward_error)?;
        st.end()
    }
}

/// All eigenvalues of a general square complex matrix, with multiplicity.
pub fn eigenvalues(m: &ComplexMatrix, config: &Config) -> Result<Spectrum> {
    assert!(m.is_square(), "eigenvalues of a non-square matrix");
    let n = m.rows();
    let scale = m.norm_fro();
    if scale == 0.0 {
        return Ok(Spectrum::new(vec![Complex64::new(0.0, 0.0); n], 0.0));
    }
    if n == 1 {
        return Ok(Spectrum::new(vec![m[(0, 0)]], EPS));
    }

    let mut h = hessenberg(m);
    let mut eigs: Vec<Complex64> = Vec::with_capacity(n);
    let mut neglected: f64 = 0.0;
    let budget = config.eig_max_sweeps * n;
    let mut iterations = 0usize;
    let mut stagnant = 0usize;

    let mut hi = n - 1;
    loop {
        // Kill negligible subdiagonals in the still-active leading block.
        for i in 1..=hi {
            let sub = h[(i, i - 1)].norm();
            if sub > 0.0 && sub <= EPS * (h[(i - 1, i - 1)].norm() + h[(i, i)].norm()) {
                neglected = neglected.max(sub);
                h[(i, i - 1)] = Complex64::new(0.0, 0.0);
            }
        }
        // Deflate converged eigenvalues off the bottom.
        while hi > 0 && h[(hi, hi - 1)] == Complex64::new(0.0, 0.0) {
            eigs.push(h[(hi, hi)]);
            hi -= 1;
            stagnant = 0;
        }
        if hi == 0 {
            eigs.push(h[(0, 0)]);
            break;
        }
        let mut lo = hi;
        while lo > 0 && h[(lo, lo - 1)] != Complex64::new(0.0, 0.0) {
            lo -= 1;
        }
        if hi - lo == 1 {
            let (l1, l2) = eig2(h[(lo, lo)], h[(lo, lo + 1)], h[(hi, lo)], h[(hi, hi)]);
            eigs.push(l1);
            eigs.push(l2);
            // The off-diagonal entry we are about to discard is not an
            // approximation error: the 2x2 block was solved exactly.
            if lo == 0 {
                break;
            }
            hi = lo - 1;
            stagnant = 0;
            continue;
        }

        if iterations >= budget {
            return Err(Error::NoConvergence {
                context: format!("qr iteration stalled with {} eigenvalues left", hi + 1),
                budget,
            });
        }
        iterations += 1;
        stagnant += 1;

        let shift = if stagnant.is_multiple_of(10) {
            // Exceptional shift to break symmetric stalls.
            h[(hi, hi)] + Complex64::new(0.75, 0.3) * h[(hi, hi - 1)].norm()
        } else {
            wilkinson_shift(
                h[(hi - 1, hi - 1)],
                h[(hi - 1, hi)],
                h[(hi, hi - 1)],
                h[(hi, hi)],
            )
        };
        qr_step(&mut h, lo, hi, shift);
    }

    Ok(Spectrum::new(
        eigs,
        (neglected / scale).max(EPS * n as f64),
    ))
}

/// Reduce to upper Hessenberg form by Householder reflections. Only the
/// eigenvalues are wanted downstream, so the transform is not accumulated.
fn hessenberg(m: &ComplexMatrix) -> ComplexMatrix {
    let n = m.rows();
    let mut h = m.clone();
    for k in 0..n.saturating_sub(2) {
        // Householder vector for column k below the subdiagonal.
        let mut norm_x_sq = 0.0;
        for i in (k + 1)..n {
            norm_x_sq += h[(i, k)].norm_sqr();
        }
        let norm_x = norm_x_sq.sqrt();
        if norm_x == 0.0 {
            continue;
        }
        let x0 = h[(k + 1, k)];
        let phase = if x0.norm() > 0.0 {
            x0 / x0.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        let mut v: Vec<Complex64> = (k + 1..n).map(|i| h[(i, k)]).collect();
        v[0] += phase * norm_x;
        let vsq: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if vsq == 0.0 {
            continue;
        }
        let beta = 2.0 / vsq;

        // Rows k+1..n: H <- H - beta v (v* H).
        for j in k..n {
            let mut dot = Complex64::new(0.0, 0.0);
            for (idx, vi) in v.iter().enumerate() {
                dot += vi.conj() * h[(k + 1 + idx, j)];
            }
            dot *= beta;
            for (idx, vi) in v.iter().enumerate() {
                let delta = vi * dot;
                h[(k + 1 + idx, j)] -= delta;
            }
        }
        // Columns k+1..n: H <- H - beta (H v) v*.
        for i in 0..n {
            let mut dot = Complex64::new(0.0, 0.0);
            for (idx, vi) in v.iter().enumerate() {
                dot += h[(i, k + 1 + idx)] * vi;
            }
            dot *= beta;
            for (idx, vi) in v.iter().enumerate() {
                let delta = dot * vi.conj();
                h[(i, k + 1 + idx)] -= delta;
            }
        }
        for i in (k + 2)..n {
            h[(i, k)] = Complex64::new(0.0, 0.0);
        }
    }
    h
}

/// Eigenvalue of the trailing 2x2 closest to its bottom-right entry.
fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let delta = (a - d) * 0.5;
    let s = (delta * delta + b * c).sqrt();
    // Pick the sign that maximizes |delta +- s| to avoid cancellation.
    let denom = if (delta + s).norm() >= (delta - s).norm() {
        delta + s
    } else {
        delta - s
    };
    if denom.norm() == 0.0 {
        return d;
    }
    d - b * c / denom
}

/// Both eigenvalues of a 2x2 block, larger-magnitude root first computed
/// stably, the other recovered from the determinant.
fn eig2(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> (Complex64, Complex64) {
    let mid = (a + d) * 0.5;
    let delta = (a - d) * 0.5;
    let s = (delta * delta + b * c).sqrt();
    let l1 = if (mid + s).norm() >= (mid - s).norm() {
        mid + s
    } else {
        mid - s
    };
    let det = a * d - b * c;
    let l2 = if l1.norm() > 0.0 {
        det / l1
    } else {
        mid + mid - l1
    };
    (l1, l2)
}

/// One explicit shifted QR sweep on the window lo..=hi of a Hessenberg
/// matrix: factor H - mu I = QR by Givens rotations, form RQ + mu I. Valid
/// for eigenvalues because the window update is itself a similarity of the
/// window and leaves the couplings to the rest of the matrix negligible
/// relative to deflation thresholds already applied.
fn qr_step(h: &mut ComplexMatrix, lo: usize, hi: usize, mu: Complex64) {
    let w = hi - lo + 1;
    let mut m = ComplexMatrix::from_fn(w, w, |i, j| h[(lo + i, lo + j)]);
    for i in 0..w {
        m[(i, i)] -= mu;
    }
    // Left Givens sweep: zero the subdiagonal, remembering each rotation.
    let mut rot: Vec<(f64, Complex64)> = Vec::with_capacity(w - 1);
    for k in 0..w - 1 {
        let a = m[(k, k)];
        let b = m[(k + 1, k)];
        let r = (a.norm_sqr() + b.norm_sqr()).sqrt();
        if r == 0.0 {
            rot.push((1.0, Complex64::new(0.0, 0.0)));
            continue;
        }
        let (c, s) = if a.norm() == 0.0 {
            (0.0, b.conj() / r)
        } else {
            let sign_a = a / a.norm();
            (a.norm() / r, sign_a * b.conj() / r)
        };
        rot.push((c, s));
        for j in k..w {
            let t1 = m[(k, j)];
            let t2 = m[(k + 1, j)];
            m[(k, j)] = c * t1 + s * t2;
            m[(k + 1, j)] = -s.conj() * t1 + c * t2;
        }
    }
    // Right sweep: R * Q restores Hessenberg form.
    for (k, (c, s)) in rot.iter().enumerate() {
        let top = (k + 2).min(w);
        for i in 0..top {
            let t1 = m[(i, k)];
            let t2 = m[(i, k + 1)];
            m[(i, k)] = *c * t1 + s.conj() * t2;
            m[(i, k + 1)] = -s * t1 + *c * t2;
        }
    }
    for i in 0..w {
        m[(i, i)] += mu;
        for j in 0..w {
            h[(lo + i, lo + j)] = m[(i, j)];
        }
    }
}

/// Hermitian eigendecomposition by cyclic Jacobi rotations: returns
/// eigenvalues ascending and a unitary V with M = V diag(vals) V*.
/// The input is symmetrized before iterating; callers that must reject
/// non-Hermitian input check the defect themselves.
pub fn hermitian_eig(m: &ComplexMatrix, config: &Config) -> Result<(Vec<f64>, ComplexMatrix)> {
    assert!(m.is_square(), "hermitian_eig of a non-square matrix");
    let n = m.rows();
    let mut s = ComplexMatrix::from_fn(n, n, |i, j| (m[(i, j)] + m[(j, i)].conj()) * 0.5);
    let mut v = ComplexMatrix::identity(n);
    let scale = s.norm_fro();
    if scale == 0.0 {
        return Ok((vec![0.0; n], v));
    }
    let threshold = EPS * scale / n as f64;

    let mut converged = false;
    for _ in 0..config.eig_max_sweeps {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = s[(p, q)];
                let mag = apq.norm();
                if mag <= threshold {
                    continue;
                }
                rotated = true;
                let app = s[(p, p)].re;
                let aqq = s[(q, q)].re;
                let phase = apq / mag;
                let tau = (aqq - app) / (2.0 * mag);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let sn = t * c;
                // Unitary J with columns (p,q): [[c, sn],[-sn*ph*, c*ph*]],
                // ph* chosen so J* S J has a real symmetric (p,q) block.
                let jpp = Complex64::new(c, 0.0);
                let jpq = Complex64::new(sn, 0.0);
                let jqp = -phase.conj() * sn;
                let jqq = phase.conj() * c;

                for j in 0..n {
                    let sp = s[(p, j)];
                    let sq = s[(q, j)];
                    s[(p, j)] = jpp.conj() * sp + jqp.conj() * sq;
                    s[(q, j)] = jpq.conj() * sp + jqq.conj() * sq;
                }
                for i in 0..n {
                    let sp = s[(i, p)];
                    let sq = s[(i, q)];
                    s[(i, p)] = sp * jpp + sq * jqp;
                    s[(i, q)] = sp * jpq + sq * jqq;
                    let vp = v[(i, p)];
                    let vq = v[(i, q)];
                    v[(i, p)] = vp * jpp + vq * jqp;
                    v[(i, q)] = vp * jpq + vq * jqq;
                }
                // Pin exact Hermitian structure against roundoff drift.
                s[(p, q)] = Complex64::new(0.0, 0.0);
                s[(q, p)] = Complex64::new(0.0, 0.0);
                s[(p, p)] = Complex64::new(s[(p, p)].re, 0.0);
                s[(q, q)] = Complex64::new(s[(q, q)].re, 0.0);
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence {
            context: "jacobi sweeps on a hermitian matrix".to_string(),
            budget: config.eig_max_sweeps,
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| s[(i, i)].re.total_cmp(&s[(j, j)].re));
    let vals: Vec<f64> = order.iter().map(|&i| s[(i, i)].re).collect();
    let vecs = ComplexMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    Ok((vals, vecs))
}

/// M^q for Hermitian positive semidefinite M, via the spectral theorem with
/// eigenvalues clamped at zero before powering.
pub fn hermitian_power(m: &ComplexMatrix, q: f64, config: &Config) -> Result<ComplexMatrix> {
    assert!(m.is_square(), "hermitian_power of a non-square matrix");
    assert!(q > 0.0, "hermitian_power exponent must be positive");
    let scale = m.norm_fro().max(1e-300);
    let herm_defect = m.max_abs_diff(&m.adjoint());
    if herm_defect > config.psd_tol * scale {
        return Err(Error::NotHermitianPsd {
            defect: herm_defect / scale,
        });
    }
    let (vals, v) = hermitian_eig(m, config)?;
    let min = vals.first().copied().unwrap_or(0.0);
    if min < -config.psd_tol * scale {
        return Err(Error::NotHermitianPsd {
            defect: -min / scale,
        });
    }
    let powered: Vec<Complex64> = vals
        .iter()
        .map(|&l| Complex64::new(l.max(0.0).powf(q), 0.0))
        .collect();
    let d = ComplexMatrix::diag(&powered);
    Ok(&(&v * &d) * &v.adjoint())
}

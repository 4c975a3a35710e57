//! Partial-pivot LU factorization over the complex field.
//!
//! Every resolvent evaluation on a contour and every direct Kronecker solve
//! funnels through here, so singularity detection is relative: a pivot below
//! `rank_tol * ||A||_F` is treated as zero.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;

pub struct Lu {
    /// Packed L (unit diagonal, below) and U (on and above).
    lu: ComplexMatrix,
    /// Row permutation: row i of the factored matrix came from `perm[i]`.
    perm: Vec<usize>,
    swaps: usize,
}

impl Lu {
    pub fn factor(a: &ComplexMatrix, rank_tol: f64) -> Result<Lu> {
        assert!(a.is_square(), "LU needs a square matrix");
        let n = a.rows();
        let scale = a.norm_fro();
        let threshold = rank_tol * if scale > 0.0 { scale } else { 1.0 };
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut swaps = 0usize;

        for k in 0..n {
            let mut pivot_row = k;
            let mut pivot_mag = lu[(k, k)].norm();
            for i in (k + 1)..n {
                let m = lu[(i, k)].norm();
                if m > pivot_mag {
                    pivot_mag = m;
                    pivot_row = i;
                }
            }
            if pivot_mag <= threshold {
                return Err(Error::SingularMatrix {
                    context: format!("pivot {pivot_mag:.3e} at column {k} below threshold"),
                });
            }
            if pivot_row != k {
                for j in 0..n {
                    let tmp = lu[(k, j)];
                    lu[(k, j)] = lu[(pivot_row, j)];
                    lu[(pivot_row, j)] = tmp;
                }
                perm.swap(k, pivot_row);
                swaps += 1;
            }
            let pivot = lu[(k, k)];
            for i in (k + 1)..n {
                let factor = lu[(i, k)] / pivot;
                lu[(i, k)] = factor;
                for j in (k + 1)..n {
                    let delta = factor * lu[(k, j)];
                    lu[(i, j)] -= delta;
                }
            }
        }
        Ok(Lu { lu, perm, swaps })
    }

    /// Solve `A X = B` for a (possibly multi-column) right-hand side.
    pub fn solve(&self, b: &ComplexMatrix) -> ComplexMatrix {
        let n = self.lu.rows();
        assert_eq!(b.rows(), n, "solve: rhs height mismatch");
        let m = b.cols();
        let mut x = ComplexMatrix::zeros(n, m);
        for i in 0..n {
            for j in 0..m {
                x[(i, j)] = b[(self.perm[i], j)];
            }
        }
        // Forward substitution with unit-lower L.
        for k in 0..n {
            for i in (k + 1)..n {
                let factor = self.lu[(i, k)];
                for j in 0..m {
                    let delta = factor * x[(k, j)];
                    x[(i, j)] -= delta;
                }
            }
        }
        // Back substitution with U.
        for k in (0..n).rev() {
            let pivot = self.lu[(k, k)];
            for j in 0..m {
                x[(k, j)] /= pivot;
            }
            for i in 0..k {
                let factor = self.lu[(i, k)];
                for j in 0..m {
                    let delta = factor * x[(k, j)];
                    x[(i, j)] -= delta;
                }
            }
        }
        x
    }

    pub fn determinant(&self) -> Complex64 {
        let n = self.lu.rows();
        let mut det = if self.swaps.is_multiple_of(2) {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(-1.0, 0.0)
        };
        for k in 0..n {
            det *= self.lu[(k, k)];
        }
        det
    }
}

/// One-shot linear solve `A X = B` with the default relative pivot threshold.
pub fn solve_linear(a: &ComplexMatrix, b: &ComplexMatrix, rank_tol: f64) -> Result<ComplexMatrix> {
    Ok(Lu::factor(a, rank_tol)?.solve(b))
}

pub fn inverse(a: &ComplexMatrix, rank_tol: f64) -> Result<ComplexMatrix> {
    let n = a.rows();
    Ok(Lu::factor(a, rank_tol)?.solve(&ComplexMatrix::identity(n)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn solves_known_real_system() {
        // [[2,1],[1,3]] x = [5, 10] has x = [1, 3].
        let a = ComplexMatrix::from_real_rows(&[&[2.0, 1.0], &[1.0, 3.0]]);
        let b = ComplexMatrix::from_real_rows(&[&[5.0], &[10.0]]);
        let x = solve_linear(&a, &b, 1e-12).unwrap();
        let expected = ComplexMatrix::from_real_rows(&[&[1.0], &[3.0]]);
        assert!(x.max_abs_diff(&expected) < 1e-13);
    }

    #[test]
    fn solves_complex_system() {
        // (1+i) x = 2i has x = i(1-i) = 1+i.
        let a = ComplexMatrix::from_rows(&[&[c(1.0, 1.0)]]);
        let b = ComplexMatrix::from_rows(&[&[c(0.0, 2.0)]]);
        let x = solve_linear(&a, &b, 1e-12).unwrap();
        assert!((x[(0, 0)] - c(1.0, 1.0)).norm() < 1e-14);
    }

    #[test]
    fn pivoting_handles_zero_leading_entry() {
        let a = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let b = ComplexMatrix::from_real_rows(&[&[3.0], &[7.0]]);
        let x = solve_linear(&a, &b, 1e-12).unwrap();
        let expected = ComplexMatrix::from_real_rows(&[&[7.0], &[3.0]]);
        assert!(x.max_abs_diff(&expected) < 1e-14);
    }

    #[test]
    fn detects_singularity() {
        let a = ComplexMatrix::from_real_rows(&[&[1.0, 2.0], &[2.0, 4.0]]);
        let b = ComplexMatrix::from_real_rows(&[&[1.0], &[1.0]]);
        assert!(matches!(
            solve_linear(&a, &b, 1e-12),
            Err(Error::SingularMatrix { .. })
        ));
    }

    #[test]
    fn inverse_times_original_is_identity() {
        let a = ComplexMatrix::from_fn(5, 5, |i, j| {
            c(
                1.0 / (1.0 + (i + j) as f64),
                if i == j { 1.0 } else { 0.1 * (i as f64 - j as f64) },
            )
        });
        let inv = inverse(&a, 1e-12).unwrap();
        let prod = &a * &inv;
        assert!(prod.max_abs_diff(&ComplexMatrix::identity(5)) < 1e-10);
    }

    #[test]
    fn determinant_of_triangular() {
        let a = ComplexMatrix::from_real_rows(&[&[2.0, 5.0], &[0.0, 3.0]]);
        let lu = Lu::factor(&a, 1e-12).unwrap();
        assert!((lu.determinant() - c(6.0, 0.0)).norm() < 1e-13);
    }
}

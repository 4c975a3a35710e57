//! Kronecker products and vectorization.
//!
//! `vec` stacks columns, so vec(AXB) = (B^T ⊗ A) vec(X). This identity is
//! used to build direct one-shot solvers for all the operator equations and
//! to cross-check the structured solvers against an independent route.

use num_complex::Complex64;

use crate::matrix::ComplexMatrix;

pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (ar, ac) = (a.rows(), a.cols());
    let (br, bc) = (b.rows(), b.cols());
    let mut out = ComplexMatrix::zeros(ar * br, ac * bc);
    for i in 0..ar {
        for j in 0..ac {
            let aij = a[(i, j)];
            if aij == Complex64::new(0.0, 0.0) {
                continue;
            }
            for p in 0..br {
                for q in 0..bc {
                    out[(i * br + p, j * bc + q)] = aij * b[(p, q)];
                }
            }
        }
    }
    out
}

/// Column-stacking vectorization: a `rows x cols` matrix becomes a
/// `rows*cols x 1` column.
pub fn vec(m: &ComplexMatrix) -> ComplexMatrix {
    let (r, c) = (m.rows(), m.cols());
    let mut out = ComplexMatrix::zeros(r * c, 1);
    for j in 0..c {
        for i in 0..r {
            out[(j * r + i, 0)] = m[(i, j)];
        }
    }
    out
}

pub fn unvec(v: &ComplexMatrix, rows: usize, cols: usize) -> ComplexMatrix {
    assert_eq!(v.cols(), 1, "unvec expects a column vector");
    assert_eq!(v.rows(), rows * cols, "unvec: length mismatch");
    ComplexMatrix::from_fn(rows, cols, |i, j| v[(j * rows + i, 0)])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn kron_two_by_two() {
        let a = ComplexMatrix::from_real_rows(&[&[1.0, 2.0], &[3.0, 4.0]]);
        let b = ComplexMatrix::from_real_rows(&[&[0.0, 5.0], &[6.0, 7.0]]);
        let k = kron(&a, &b);
        // Top-left block is 1*B, top-right is 2*B.
        let expected = ComplexMatrix::from_real_rows(&[
            &[0.0, 5.0, 0.0, 10.0],
            &[6.0, 7.0, 12.0, 14.0],
            &[0.0, 15.0, 0.0, 20.0],
            &[18.0, 21.0, 24.0, 28.0],
        ]);
        assert_eq!(k.max_abs_diff(&expected), 0.0);
    }

    #[test]
    fn vec_stacks_columns() {
        let m = ComplexMatrix::from_real_rows(&[&[1.0, 3.0], &[2.0, 4.0]]);
        let v = vec(&m);
        for (i, want) in [1.0, 2.0, 3.0, 4.0].iter().enumerate() {
            assert_eq!(v[(i, 0)], c(*want, 0.0));
        }
    }

    #[test]
    fn unvec_inverts_vec() {
        let m = ComplexMatrix::from_fn(3, 5, |i, j| c(i as f64 + 0.1, j as f64 - 2.0));
        let back = unvec(&vec(&m), 3, 5);
        assert_eq!(back.max_abs_diff(&m), 0.0);
    }

    #[test]
    fn vec_of_product_identity() {
        // vec(AXB) = (B^T kron A) vec(X), exercised on a non-square X.
        let a = ComplexMatrix::from_fn(2, 3, |i, j| c((i + j) as f64, 1.0));
        let x = ComplexMatrix::from_fn(3, 2, |i, j| c(i as f64, -(j as f64)));
        let b = ComplexMatrix::from_fn(2, 4, |i, j| c(1.0, (i * j) as f64 * 0.5));
        let lhs = vec(&(&(&a * &x) * &b));
        let rhs = &kron(&b.transpose(), &a) * &vec(&x);
        assert!(lhs.max_abs_diff(&rhs) <= 1e-12 * lhs.norm_fro().max(1.0));
    }
}

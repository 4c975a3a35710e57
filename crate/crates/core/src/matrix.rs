use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Dense complex matrix, row-major. The universal operand of the toolkit.
///
/// Entries are validated to be finite on checked construction; arithmetic
/// assumes conformal shapes and panics otherwise, since a shape violation
/// is a programming error rather than a data error.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Checked constructor: rejects shape/length mismatches and non-finite
    /// entries.
    pub fn new(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::DimensionMismatch(format!(
                "matrix dimensions must be positive, got {rows}x{cols}"
            )));
        }
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                entries.len()
            )));
        }
        for (k, z) in entries.iter().enumerate() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::NonFiniteEntry {
                    row: k / cols,
                    col: k % cols,
                });
            }
        }
        Ok(ComplexMatrix { rows, cols, entries })
    }

    pub(crate) fn from_vec_unchecked(rows: usize, cols: usize, entries: Vec<Complex64>) -> Self {
        debug_assert_eq!(entries.len(), rows * cols);
        ComplexMatrix { rows, cols, entries }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix {
            rows,
            cols,
            entries: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Build from row slices; panics on ragged input. Test-friendly.
    pub fn from_rows(rows: &[&[Complex64]]) -> Self {
        assert!(!rows.is_empty(), "from_rows: empty matrix");
        let cols = rows[0].len();
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "from_rows: ragged rows");
            entries.extend_from_slice(r);
        }
        ComplexMatrix {
            rows: rows.len(),
            cols,
            entries,
        }
    }

    /// Real input convenience, mostly for tests and parsers.
    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        assert!(!rows.is_empty(), "from_real_rows: empty matrix");
        let cols = rows[0].len();
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "from_real_rows: ragged rows");
            entries.extend(r.iter().map(|&x| Complex64::new(x, 0.0)));
        }
        ComplexMatrix {
            rows: rows.len(),
            cols,
            entries,
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        ComplexMatrix { rows, cols, entries }
    }

    pub fn diag(values: &[Complex64]) -> Self {
        let n = values.len();
        let mut m = Self::zeros(n, n);
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = v;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    /// Transpose without conjugation (needed for vec/Kronecker identities).
    pub fn transpose(&self) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)];
            }
        }
        out
    }

    pub fn conj(&self) -> ComplexMatrix {
        let entries = self.entries.iter().map(|z| z.conj()).collect();
        ComplexMatrix::from_vec_unchecked(self.rows, self.cols, entries)
    }

    pub fn scale(&self, s: Complex64) -> ComplexMatrix {
        let entries = self.entries.iter().map(|z| z * s).collect();
        ComplexMatrix::from_vec_unchecked(self.rows, self.cols, entries)
    }

    pub fn trace(&self) -> Complex64 {
        assert!(self.is_square(), "trace of a non-square matrix");
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    pub fn norm_fro(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Maximum absolute column sum (the induced 1-norm).
    pub fn norm_one(&self) -> f64 {
        let mut best = 0.0f64;
        for j in 0..self.cols {
            let s: f64 = (0..self.rows).map(|i| self[(i, j)].norm()).sum();
            best = best.max(s);
        }
        best
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.entries
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn matmul(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(
            self.cols, other.rows,
            "matmul: {}x{} times {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let mut out = ComplexMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> ComplexMatrix {
        assert!(r0 + rows <= self.rows && c0 + cols <= self.cols);
        ComplexMatrix::from_fn(rows, cols, |i, j| self[(r0 + i, c0 + j)])
    }

    pub fn set_submatrix(&mut self, r0: usize, c0: usize, block: &ComplexMatrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r0 + i, c0 + j)] = block[(i, j)];
            }
        }
    }

    /// Assemble `[[a, b], [c, d]]`; block shapes must be conformal.
    pub fn block2x2(
        a: &ComplexMatrix,
        b: &ComplexMatrix,
        c: &ComplexMatrix,
        d: &ComplexMatrix,
    ) -> ComplexMatrix {
        assert_eq!(a.rows, b.rows, "block2x2: top row heights differ");
        assert_eq!(c.rows, d.rows, "block2x2: bottom row heights differ");
        assert_eq!(a.cols, c.cols, "block2x2: left column widths differ");
        assert_eq!(b.cols, d.cols, "block2x2: right column widths differ");
        let mut out = ComplexMatrix::zeros(a.rows + c.rows, a.cols + b.cols);
        out.set_submatrix(0, 0, a);
        out.set_submatrix(0, a.cols, b);
        out.set_submatrix(a.rows, 0, c);
        out.set_submatrix(a.rows, a.cols, d);
        out
    }

    /// `max_ij |self - other|`; infinity on shape mismatch.
    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        if self.rows != other.rows || self.cols != other.cols {
            return f64::INFINITY;
        }
        self.entries
            .iter()
            .zip(other.entries.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.entries[i * self.cols + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "add: shape mismatch");
        let entries = self
            .entries
            .iter()
            .zip(other.entries.iter())
            .map(|(a, b)| a + b)
            .collect();
        ComplexMatrix::from_vec_unchecked(self.rows, self.cols, entries)
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "sub: shape mismatch");
        let entries = self
            .entries
            .iter()
            .zip(other.entries.iter())
            .map(|(a, b)| a - b)
            .collect();
        ComplexMatrix::from_vec_unchecked(self.rows, self.cols, entries)
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn neg(self) -> ComplexMatrix {
        let entries = self.entries.iter().map(|z| -z).collect();
        ComplexMatrix::from_vec_unchecked(self.rows, self.cols, entries)
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, other: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(other)
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:+.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Serialized as `{rows, cols, entries: [[re, im], ...]}` row-major.
impl Serialize for ComplexMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("ComplexMatrix", 3)?;
        st.serialize_field("rows", &self.rows)?;
        st.serialize_field("cols", &self.cols)?;
        let pairs: Vec<[f64; 2]> = self.entries.iter().map(|z| [z.re, z.im]).collect();
        st.serialize_field("entries", &pairs)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn adjoint_conjugates_scalar() {
        let m = ComplexMatrix::from_rows(&[&[c(0.0, 1.0)]]);
        let a = m.adjoint();
        assert_eq!(a[(0, 0)], c(0.0, -1.0));
    }

    #[test]
    fn adjoint_fixes_real_symmetric() {
        let m = ComplexMatrix::from_real_rows(&[&[1.0, 2.0], &[2.0, 5.0]]);
        assert_eq!(m.adjoint().max_abs_diff(&m), 0.0);
    }

    #[test]
    fn adjoint_is_involutive() {
        let m = ComplexMatrix::from_fn(3, 4, |i, j| c(i as f64 - 0.5 * j as f64, j as f64 + 0.25));
        assert_eq!(m.adjoint().adjoint().max_abs_diff(&m), 0.0);
    }

    #[test]
    fn rejects_non_finite() {
        let bad = ComplexMatrix::new(1, 2, vec![c(1.0, 0.0), c(f64::NAN, 0.0)]);
        assert!(matches!(bad, Err(Error::NonFiniteEntry { row: 0, col: 1 })));
    }

    #[test]
    fn rejects_length_mismatch() {
        let bad = ComplexMatrix::new(2, 2, vec![c(1.0, 0.0)]);
        assert!(matches!(bad, Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn matmul_identity() {
        let m = ComplexMatrix::from_fn(3, 3, |i, j| c((i * 3 + j) as f64, j as f64));
        let i3 = ComplexMatrix::identity(3);
        assert_eq!((&i3 * &m).max_abs_diff(&m), 0.0);
        assert_eq!((&m * &i3).max_abs_diff(&m), 0.0);
    }

    #[test]
    fn trace_of_commutator_vanishes() {
        // Wintner sanity: trace(AX - XA) = 0 for all square A, X.
        for n in 1..=8usize {
            let a = ComplexMatrix::from_fn(n, n, |i, j| c((i + 2 * j) as f64, (i * j) as f64 * 0.3));
            let x = ComplexMatrix::from_fn(n, n, |i, j| c(1.0 / (1.0 + i as f64 + j as f64), 0.7));
            let comm = &(&a * &x) - &(&x * &a);
            let scale = a.norm_fro() * x.norm_fro();
            assert!(comm.trace().norm() <= 1e-10 * scale.max(1.0));
        }
    }

    #[test]
    fn block2x2_roundtrip() {
        let a = ComplexMatrix::from_real_rows(&[&[1.0]]);
        let b = ComplexMatrix::from_real_rows(&[&[2.0, 3.0]]);
        let cm = ComplexMatrix::from_real_rows(&[&[4.0], &[5.0]]);
        let d = ComplexMatrix::from_real_rows(&[&[6.0, 7.0], &[8.0, 9.0]]);
        let w = ComplexMatrix::block2x2(&a, &b, &cm, &d);
        assert_eq!(w.rows(), 3);
        assert_eq!(w.cols(), 3);
        assert_eq!(w.submatrix(0, 1, 1, 2).max_abs_diff(&b), 0.0);
        assert_eq!(w.submatrix(1, 0, 2, 1).max_abs_diff(&cm), 0.0);
    }
}

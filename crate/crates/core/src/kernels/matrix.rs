use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use rayon::prelude::*;

use super::Scalar;
use crate::{Error, Result};

/// Work threshold (in scalar multiply-adds) above which products run on
/// the rayon pool.
const PAR_WORK: usize = 1 << 20;

/// Dense matrix stored in column-major order.
///
/// Entry `(i, j)` lives at `data[i + j * rows]`.
#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::from_re(0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::eye(n, n)
    }

    /// The first `cols` columns of the `rows × rows` identity.
    pub fn eye(rows: usize, cols: usize) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows.min(cols) {
            m[(i, i)] = T::from_re(1.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for j in 0..cols {
            for i in 0..rows {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Wraps a column-major buffer. Both dimensions must be positive.
    pub fn from_column_major(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::arg(format!(
                "matrix dimensions must be positive, got {rows}x{cols}"
            )));
        }
        if data.len() != rows * cols {
            return Err(Error::arg(format!(
                "buffer holds {} entries, expected {rows}x{cols}",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_row_major(rows: usize, cols: usize, data: &[T]) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::arg(format!(
                "buffer holds {} entries, expected {rows}x{cols}",
                data.len()
            )));
        }
        Self::from_column_major(rows, cols, Self::from_fn(rows, cols, |i, j| data[i * cols + j]).data)
    }

    pub fn from_diag(diag: &[T]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn from_real_diag(diag: &[f64]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = T::from_re(d);
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    #[inline]
    pub fn as_mut_slice(&mut self) -> &mut [T] {
        &mut self.data
    }

    pub fn into_vec(self) -> Vec<T> {
        self.data
    }

    #[inline]
    pub fn column(&self, j: usize) -> &[T] {
        &self.data[j * self.rows..(j + 1) * self.rows]
    }

    #[inline]
    pub fn column_mut(&mut self, j: usize) -> &mut [T] {
        &mut self.data[j * self.rows..(j + 1) * self.rows]
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for j in 0..self.cols {
            for i in 0..self.rows {
                out.data[j + i * self.cols] = self.data[i + j * self.rows].conj();
            }
        }
        out
    }

    /// Copy of columns `start..end`.
    pub fn columns(&self, start: usize, end: usize) -> Self {
        assert!(start <= end && end <= self.cols, "column range out of bounds");
        Matrix {
            rows: self.rows,
            cols: end - start,
            data: self.data[start * self.rows..end * self.rows].to_vec(),
        }
    }

    /// Copy of rows `start..end`.
    pub fn row_range(&self, start: usize, end: usize) -> Self {
        assert!(start <= end && end <= self.rows, "row range out of bounds");
        Self::from_fn(end - start, self.cols, |i, j| self[(start + i, j)])
    }

    /// Horizontal concatenation `[self, other]`.
    pub fn hcat(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch {
                op: "hcat",
                lhs: self.shape(),
                rhs: other.shape(),
            });
        }
        let mut data = Vec::with_capacity(self.data.len() + other.data.len());
        data.extend_from_slice(&self.data);
        data.extend_from_slice(&other.data);
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols + other.cols,
            data,
        })
    }

    pub fn map(&self, f: impl Fn(T) -> T) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| f(x)).collect(),
        }
    }

    pub fn scale(&self, s: T) -> Self {
        self.map(|x| x * s)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, "add", |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, "sub", |a, b| a - b)
    }

    /// `a·self + b·other`, entrywise.
    pub fn lin_comb(&self, a: T, other: &Self, b: T) -> Result<Self> {
        self.zip_with(other, "lin_comb", |x, y| a * x + b * y)
    }

    fn zip_with(&self, other: &Self, op: &'static str, f: impl Fn(T, T) -> T) -> Result<Self> {
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch {
                op,
                lhs: self.shape(),
                rhs: other.shape(),
            });
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    pub fn frobenius_norm_sq(&self) -> f64 {
        self.data.iter().map(|x| x.abs_sq()).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.frobenius_norm_sq().sqrt()
    }

    /// Trace inner product `⟨self, other⟩ = tr(self* · other)`.
    pub fn inner(&self, other: &Self) -> Result<T> {
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch {
                op: "inner",
                lhs: self.shape(),
                rhs: other.shape(),
            });
        }
        let mut acc = T::from_re(0.0);
        for (&a, &b) in self.data.iter().zip(&other.data) {
            acc += a.conj() * b;
        }
        Ok(acc)
    }

    /// `‖self − other‖_F`.
    pub fn distance(&self, other: &Self) -> f64 {
        assert_eq!(self.shape(), other.shape(), "distance: shape mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| (a - b).abs_sq())
            .sum::<f64>()
            .sqrt()
    }

    pub fn trace(&self) -> T {
        let mut acc = T::from_re(0.0);
        for i in 0..self.rows.min(self.cols) {
            acc += self[(i, i)];
        }
        acc
    }

    /// `‖self − self*‖_F`; only meaningful for square matrices.
    pub fn hermitian_defect(&self) -> f64 {
        assert_eq!(self.rows, self.cols, "hermitian_defect: non-square");
        let mut acc = 0.0;
        for j in 0..self.cols {
            for i in 0..self.rows {
                acc += (self[(i, j)] - self[(j, i)].conj()).abs_sq();
            }
        }
        acc.sqrt()
    }

    /// `(self + self*)/2`.
    pub fn hermitian_part(&self) -> Self {
        assert_eq!(self.rows, self.cols, "hermitian_part: non-square");
        let half = T::from_re(0.5);
        Self::from_fn(self.rows, self.cols, |i, j| {
            (self[(i, j)] + self[(j, i)].conj()) * half
        })
    }

    /// Scales column `j` by `d[j]`, i.e. `self · diag(d)`.
    pub fn scale_columns(&self, d: &[f64]) -> Self {
        assert_eq!(d.len(), self.cols, "scale_columns: length mismatch");
        let mut out = self.clone();
        for (j, &s) in d.iter().enumerate() {
            let s = T::from_re(s);
            for x in out.column_mut(j) {
                *x *= s;
            }
        }
        out
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().filter(|x| !x.is_exact_zero()).count()
    }

    /// Product `self · rhs`.
    ///
    /// Zero entries are skipped on both operands, so diagonal or otherwise
    /// sparse inputs cost time proportional to their nonzero count.
    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                op: "matmul",
                lhs: self.shape(),
                rhs: rhs.shape(),
            });
        }
        Ok(gemm(self, rhs))
    }

    /// Product `self* · rhs` without forming the adjoint.
    pub fn adjoint_matmul(&self, rhs: &Self) -> Result<Self> {
        if self.rows != rhs.rows {
            return Err(Error::DimensionMismatch {
                op: "adjoint_matmul",
                lhs: self.shape(),
                rhs: rhs.shape(),
            });
        }
        let (m, k) = self.shape();
        let n = rhs.cols;
        let mut out = Self::zeros(k, n);
        let fill = |(j, ocol): (usize, &mut [T])| {
            let rcol = rhs.column(j);
            for (i, o) in ocol.iter_mut().enumerate() {
                let lcol = self.column(i);
                let mut acc = T::from_re(0.0);
                for p in 0..m {
                    acc += lcol[p].conj() * rcol[p];
                }
                *o = acc;
            }
        };
        if m * k * n >= PAR_WORK {
            out.data.par_chunks_mut(k.max(1)).enumerate().for_each(fill);
        } else {
            out.data.chunks_mut(k.max(1)).enumerate().for_each(fill);
        }
        Ok(out)
    }

    /// Product `self · rhs*`.
    pub fn matmul_adjoint(&self, rhs: &Self) -> Result<Self> {
        self.matmul(&rhs.adjoint())
    }
}

fn gemm<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> Matrix<T> {
    let (m, k) = a.shape();
    let n = b.cols;
    let mut c = Matrix::zeros(m, n);
    if m == 0 || n == 0 || k == 0 {
        return c;
    }
    let a_nnz = a.nnz();
    if a_nnz * 4 < m * k {
        // Scatter the few nonzeros of `a` row by row.
        for p in 0..k {
            let acol = a.column(p);
            for (i, &aip) in acol.iter().enumerate() {
                if aip.is_exact_zero() {
                    continue;
                }
                for j in 0..n {
                    let bpj = b.data[p + j * k];
                    c.data[i + j * m] += aip * bpj;
                }
            }
        }
        return c;
    }
    let fill = |(j, ccol): (usize, &mut [T])| {
        let bcol = b.column(j);
        for (p, &bpj) in bcol.iter().enumerate() {
            if bpj.is_exact_zero() {
                continue;
            }
            let acol = a.column(p);
            for (ci, &ai) in ccol.iter_mut().zip(acol) {
                *ci += ai * bpj;
            }
        }
    };
    if m * k * n >= PAR_WORK {
        c.data.par_chunks_mut(m).enumerate().for_each(fill);
    } else {
        c.data.chunks_mut(m).enumerate().for_each(fill);
    }
    c
}

impl<T: Scalar> Mul for &Matrix<T> {
    type Output = Matrix<T>;

    /// Panics on inner-dimension mismatch; use [`Matrix::matmul`] for a
    /// checked product.
    fn mul(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(
            self.cols, rhs.rows,
            "matmul: {:?} · {:?}",
            self.shape(),
            rhs.shape()
        );
        gemm(self, rhs)
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &T {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i + j * self.rows]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i + j * self.rows]
    }
}

impl<T: Scalar> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows.min(8) {
            write!(f, " ")?;
            for j in 0..self.cols.min(8) {
                let x = self[(i, j)];
                if T::FIELD == super::Field::Real {
                    write!(f, " {:>10.4e}", x.re())?;
                } else {
                    write!(f, " {:>10.4e}{:+.4e}i", x.re(), x.im())?;
                }
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

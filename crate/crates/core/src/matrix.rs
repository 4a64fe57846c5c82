//! Dense column-major matrix with the small set of products the
//! decomposition kernels need.

use crate::error::{CoreError, CoreResult};
use crate::scalar::Scalar;

/// Dense matrix, values linearized first index (row) fastest, i.e.
/// column-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T: Scalar> {
    rows: usize,
    cols: usize,
    values: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Self {
            rows,
            cols,
            values: vec![T::zero(); rows * cols],
        }
    }

    /// Builds a matrix from column-major values, validating length and
    /// finiteness.
    pub fn from_values(rows: usize, cols: usize, values: Vec<T>) -> CoreResult<Self> {
        if rows == 0 || cols == 0 {
            return Err(CoreError::InvalidShape(format!(
                "matrix dimensions {rows}x{cols}"
            )));
        }
        if values.len() != rows * cols {
            return Err(CoreError::ShapeMismatch(format!(
                "expected {} values for a {rows}x{cols} matrix, got {}",
                rows * cols,
                values.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(CoreError::NonFinite("matrix values"));
        }
        Ok(Self { rows, cols, values })
    }

    /// Row-major convenience constructor, mostly for tests and literals.
    pub fn from_rows(rows: &[&[T]]) -> CoreResult<Self> {
        let r = rows.len();
        if r == 0 || rows[0].is_empty() {
            return Err(CoreError::InvalidShape("empty row list".into()));
        }
        let c = rows[0].len();
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != c {
                return Err(CoreError::ShapeMismatch("ragged rows".into()));
            }
            for (j, &v) in row.iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        if m.values.iter().any(|v| !v.is_finite()) {
            return Err(CoreError::NonFinite("matrix values"));
        }
        Ok(m)
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    /// First `cols` columns of the identity, the deterministic
    /// initialization basis.
    pub fn eye_columns(rows: usize, cols: usize) -> Self {
        assert!(cols <= rows);
        let mut m = Self::zeros(rows, cols);
        for j in 0..cols {
            m[(j, j)] = T::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [T] {
        &mut self.values
    }

    pub fn column(&self, j: usize) -> &[T] {
        &self.values[j * self.rows..(j + 1) * self.rows]
    }

    pub fn column_mut(&mut self, j: usize) -> &mut [T] {
        &mut self.values[j * self.rows..(j + 1) * self.rows]
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for j in 0..self.cols {
            for i in 0..self.rows {
                out[(j, i)] = self[(i, j)];
            }
        }
        out
    }

    /// Keeps the first `k` columns.
    pub fn truncate_columns(&self, k: usize) -> Self {
        assert!(k >= 1 && k <= self.cols);
        Self {
            rows: self.rows,
            cols: k,
            values: self.values[..self.rows * k].to_vec(),
        }
    }

    /// `self * rhs`.
    pub fn matmul(&self, rhs: &Self) -> CoreResult<Self> {
        if self.cols != rhs.rows {
            return Err(CoreError::ShapeMismatch(format!(
                "matmul {}x{} * {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let (m, k, n) = (self.rows, self.cols, rhs.cols);
        let mut out = Self::zeros(m, n);
        for j in 0..n {
            let rcol = rhs.column(j);
            let ocol = out.column_mut(j);
            for l in 0..k {
                let b = rcol[l];
                if b != T::zero() {
                    let acol = self.column(l);
                    for i in 0..m {
                        ocol[i] += acol[i] * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// `self^T * rhs`; both operands are walked column-wise so the inner
    /// loops are contiguous dot products.
    pub fn matmul_tn(&self, rhs: &Self) -> CoreResult<Self> {
        if self.rows != rhs.rows {
            return Err(CoreError::ShapeMismatch(format!(
                "matmul_tn {}x{} , {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let (m, n) = (self.cols, rhs.cols);
        let mut out = Self::zeros(m, n);
        for j in 0..n {
            let rcol = rhs.column(j);
            let ocol = out.column_mut(j);
            for (i, o) in ocol.iter_mut().enumerate() {
                *o = dot(self.column(i), rcol);
            }
        }
        Ok(out)
    }

    /// `self * rhs^T`.
    pub fn matmul_nt(&self, rhs: &Self) -> CoreResult<Self> {
        if self.cols != rhs.cols {
            return Err(CoreError::ShapeMismatch(format!(
                "matmul_nt {}x{} , {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let (m, k, n) = (self.rows, self.cols, rhs.rows);
        let mut out = Self::zeros(m, n);
        for l in 0..k {
            let acol = self.column(l);
            let bcol = rhs.column(l);
            for j in 0..n {
                let b = bcol[j];
                if b != T::zero() {
                    let ocol = out.column_mut(j);
                    for i in 0..m {
                        ocol[i] += acol[i] * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, alpha: T) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            values: self.values.iter().map(|&v| v * alpha).collect(),
        }
    }

    pub fn add(&self, rhs: &Self) -> CoreResult<Self> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(CoreError::ShapeMismatch("matrix add".into()));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            values: self
                .values
                .iter()
                .zip(&rhs.values)
                .map(|(&a, &b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, rhs: &Self) -> CoreResult<Self> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(CoreError::ShapeMismatch("matrix sub".into()));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            values: self
                .values
                .iter()
                .zip(&rhs.values)
                .map(|(&a, &b)| a - b)
                .collect(),
        })
    }

    pub fn frobenius_norm(&self) -> T {
        self.values.iter().map(|&v| v * v).sum::<T>().sqrt()
    }

    pub fn max_abs(&self) -> T {
        self.values
            .iter()
            .fold(T::zero(), |acc, &v| acc.max(v.abs()))
    }

    /// Largest entry of `|self^T self - I|`; zero for perfectly
    /// orthonormal columns.
    pub fn orthonormality_defect(&self) -> T {
        let mut worst = T::zero();
        for i in 0..self.cols {
            for j in i..self.cols {
                let d = dot(self.column(i), self.column(j));
                let target = if i == j { T::one() } else { T::zero() };
                worst = worst.max((d - target).abs());
            }
        }
        worst
    }
}

impl<T: Scalar> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.values[i + j * self.rows]
    }
}

impl<T: Scalar> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.values[i + j * self.rows]
    }
}

pub fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

/// Kronecker product `a (x) b`. Used by test oracles for the unfolding
/// identity and the sketch decomposition; the pipeline itself never forms
/// Kronecker factors.
pub fn kron<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> Matrix<T> {
    let mut out = Matrix::zeros(a.rows() * b.rows(), a.cols() * b.cols());
    for ja in 0..a.cols() {
        for ia in 0..a.rows() {
            let s = a[(ia, ja)];
            for jb in 0..b.cols() {
                for ib in 0..b.rows() {
                    out[(ia * b.rows() + ib, ja * b.cols() + jb)] = s * b[(ib, jb)];
                }
            }
        }
    }
    out
}

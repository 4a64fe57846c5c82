//! Dense d-way tensor and mode-wise products.

use crate::error::{CoreError, CoreResult};
use crate::matrix::Matrix;
use crate::scalar::Scalar;
use crate::shape::Shape;

/// Dense tensor, values linearized with the first index varying fastest.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseTensor<T: Scalar> {
    shape: Shape,
    values: Vec<T>,
}

impl<T: Scalar> DenseTensor<T> {
    pub fn zeros(shape: Shape) -> Self {
        let n = shape.numel();
        Self {
            shape,
            values: vec![T::zero(); n],
        }
    }

    /// Builds a tensor from already-linearized values, validating length
    /// and finiteness.
    pub fn from_values(shape: Shape, values: Vec<T>) -> CoreResult<Self> {
        if values.len() != shape.numel() {
            return Err(CoreError::ShapeMismatch(format!(
                "expected {} values for shape {:?}, got {}",
                shape.numel(),
                shape.extents(),
                values.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(CoreError::NonFinite("tensor values"));
        }
        Ok(Self { shape, values })
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn order(&self) -> usize {
        self.shape.order()
    }

    pub fn numel(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [T] {
        &mut self.values
    }

    pub fn get(&self, index: &[usize]) -> T {
        self.values[self.shape.linear_index(index)]
    }

    pub fn set(&mut self, index: &[usize], v: T) {
        let lin = self.shape.linear_index(index);
        self.values[lin] = v;
    }

    pub fn frobenius_norm(&self) -> T {
        self.values.iter().map(|&v| v * v).sum::<T>().sqrt()
    }

    pub fn max_abs(&self) -> T {
        self.values
            .iter()
            .fold(T::zero(), |acc, &v| acc.max(v.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.is_finite())
    }

    pub fn scale(&self, alpha: T) -> Self {
        Self {
            shape: self.shape.clone(),
            values: self.values.iter().map(|&v| v * alpha).collect(),
        }
    }

    pub fn add(&self, rhs: &Self) -> CoreResult<Self> {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &Self) -> CoreResult<Self> {
        self.zip_with(rhs, |a, b| a - b)
    }

    /// `self += alpha * rhs`, in place.
    pub fn scaled_add_assign(&mut self, alpha: T, rhs: &Self) -> CoreResult<()> {
        if self.shape != rhs.shape {
            return Err(CoreError::ShapeMismatch("tensor scaled_add".into()));
        }
        for (a, &b) in self.values.iter_mut().zip(&rhs.values) {
            *a += alpha * b;
        }
        Ok(())
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(T, T) -> T) -> CoreResult<Self> {
        if self.shape != rhs.shape {
            return Err(CoreError::ShapeMismatch(format!(
                "elementwise op on {:?} vs {:?}",
                self.shape.extents(),
                rhs.shape.extents()
            )));
        }
        Ok(Self {
            shape: self.shape.clone(),
            values: self
                .values
                .iter()
                .zip(&rhs.values)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    /// Mode-k unfolding: an `n_k x prod(n_i, i != k)` matrix whose columns
    /// enumerate the remaining modes in ascending order, lower index
    /// fastest.
    pub fn unfold(&self, mode: usize) -> CoreResult<Matrix<T>> {
        self.shape.check_mode(mode)?;
        let n_k = self.shape.extent(mode);
        let stride = self.shape.stride(mode);
        let cols = self.numel() / n_k;
        let mut out = Matrix::zeros(n_k, cols);
        let outv = out.values_mut();
        // Linear index decomposes as pre + stride*(i_k + n_k*post); the
        // unfolding column index is pre + stride*post.
        for (lin, &v) in self.values.iter().enumerate() {
            let pre = lin % stride;
            let rest = lin / stride;
            let i_k = rest % n_k;
            let post = rest / n_k;
            let col = pre + stride * post;
            outv[i_k + n_k * col] = v;
        }
        Ok(out)
    }

    /// Inverse of [`unfold`]: rebuilds a tensor of shape `shape` from its
    /// mode-k unfolding. Exact (bitwise) round trip.
    pub fn fold(m: &Matrix<T>, mode: usize, shape: &Shape) -> CoreResult<Self> {
        shape.check_mode(mode)?;
        let n_k = shape.extent(mode);
        let stride = shape.stride(mode);
        if m.rows() != n_k || m.cols() != shape.numel() / n_k {
            return Err(CoreError::ShapeMismatch(format!(
                "cannot fold {}x{} into {:?} at mode {}",
                m.rows(),
                m.cols(),
                shape.extents(),
                mode
            )));
        }
        let mut out = Self::zeros(shape.clone());
        let mv = m.values();
        for (lin, o) in out.values.iter_mut().enumerate() {
            let pre = lin % stride;
            let rest = lin / stride;
            let i_k = rest % n_k;
            let post = rest / n_k;
            let col = pre + stride * post;
            *o = mv[i_k + n_k * col];
        }
        Ok(out)
    }

    /// Tensor-times-matrix in mode k, contracting the mode-k extent
    /// against the rows of `m`: the result has extent `m.cols()` in mode k
    /// and entries `sum_i X(.., i, ..) * m(i, j)`.
    pub fn ttm(&self, m: &Matrix<T>, mode: usize) -> CoreResult<Self> {
        self.shape.check_mode(mode)?;
        if m.rows() != self.shape.extent(mode) {
            return Err(CoreError::ShapeMismatch(format!(
                "ttm mode {} extent {} vs matrix rows {}",
                mode,
                self.shape.extent(mode),
                m.rows()
            )));
        }
        let unfolded = self.unfold(mode)?;
        let product = m.matmul_tn(&unfolded)?;
        let new_shape = self.shape.with_extent(mode, m.cols())?;
        Self::fold(&product, mode, &new_shape)
    }

    /// Tensor-times-matrix in mode k contracting against the *columns* of
    /// `m` (the usual multilinear product used for reconstruction): the
    /// result has extent `m.rows()` and entries
    /// `sum_i X(.., i, ..) * m(j, i)`.
    pub fn ttm_t(&self, m: &Matrix<T>, mode: usize) -> CoreResult<Self> {
        self.shape.check_mode(mode)?;
        if m.cols() != self.shape.extent(mode) {
            return Err(CoreError::ShapeMismatch(format!(
                "ttm_t mode {} extent {} vs matrix cols {}",
                mode,
                self.shape.extent(mode),
                m.cols()
            )));
        }
        let unfolded = self.unfold(mode)?;
        let product = m.matmul(&unfolded)?;
        let new_shape = self.shape.with_extent(mode, m.rows())?;
        Self::fold(&product, mode, &new_shape)
    }

    /// Stacks equally-shaped tensors along a new trailing mode. Under
    /// first-index-fastest linearization this is a plain concatenation of
    /// the value buffers.
    pub fn concat_last(tensors: &[Self]) -> CoreResult<Self> {
        let first = tensors
            .first()
            .ok_or(CoreError::EmptyInput("concat_last"))?;
        let mut values = Vec::with_capacity(first.numel() * tensors.len());
        for t in tensors {
            if t.shape != first.shape {
                return Err(CoreError::ShapeMismatch(
                    "concat_last requires identical shapes".into(),
                ));
            }
            values.extend_from_slice(&t.values);
        }
        let mut extents = first.shape.extents().to_vec();
        extents.push(tensors.len());
        Ok(Self {
            shape: Shape::new(extents)?,
            values,
        })
    }

    /// Slice `i` along the trailing mode, dropping that mode.
    pub fn slice_last(&self, i: usize) -> CoreResult<Self> {
        let d = self.order();
        if d < 2 {
            return Err(CoreError::ModeOutOfRange { mode: 0, order: d });
        }
        let last = self.shape.extent(d - 1);
        if i >= last {
            return Err(CoreError::ShapeMismatch(format!(
                "slice {} of {} along last mode",
                i, last
            )));
        }
        let inner: usize = self.numel() / last;
        let shape = Shape::new(self.shape.extents()[..d - 1].to_vec())?;
        Ok(Self {
            shape,
            values: self.values[i * inner..(i + 1) * inner].to_vec(),
        })
    }
}

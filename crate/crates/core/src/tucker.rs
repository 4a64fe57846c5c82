//! Tucker-format tensor: core plus per-mode orthonormal factor matrices.

use crate::error::{CoreError, CoreResult};
use crate::matrix::Matrix;
use crate::scalar::Scalar;
use crate::tensor::DenseTensor;

/// `core x_1 factors[0] x_2 ... x_d factors[d-1]` with factor `k` of size
/// `n_k x r_k`, orthonormal columns, `r_k <= n_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct TuckerFactors<T: Scalar> {
    core: DenseTensor<T>,
    factors: Vec<Matrix<T>>,
}

impl<T: Scalar> TuckerFactors<T> {
    pub fn new(core: DenseTensor<T>, factors: Vec<Matrix<T>>) -> CoreResult<Self> {
        if factors.len() != core.order() {
            return Err(CoreError::ShapeMismatch(format!(
                "{} factors for an order-{} core",
                factors.len(),
                core.order()
            )));
        }
        let tol = T::epsilon() * T::cst(1e3);
        for (k, f) in factors.iter().enumerate() {
            if f.cols() != core.shape().extent(k) {
                return Err(CoreError::ShapeMismatch(format!(
                    "factor {} has {} columns, core extent is {}",
                    k,
                    f.cols(),
                    core.shape().extent(k)
                )));
            }
            if f.cols() > f.rows() {
                return Err(CoreError::RankOutOfRange(format!(
                    "factor {} is {}x{}; rank exceeds the mode extent",
                    k,
                    f.rows(),
                    f.cols()
                )));
            }
            if f.orthonormality_defect() > tol {
                return Err(CoreError::ShapeMismatch(format!(
                    "factor {} does not have orthonormal columns",
                    k
                )));
            }
        }
        Ok(Self { core, factors })
    }

    pub fn core(&self) -> &DenseTensor<T> {
        &self.core
    }

    pub fn factors(&self) -> &[Matrix<T>] {
        &self.factors
    }

    pub fn factor(&self, mode: usize) -> &Matrix<T> {
        &self.factors[mode]
    }

    pub fn order(&self) -> usize {
        self.core.order()
    }

    /// Ranks `(r_1, ..., r_d)` of the representation.
    pub fn ranks(&self) -> Vec<usize> {
        self.core.shape().extents().to_vec()
    }

    /// Extents `(n_1, ..., n_d)` of the represented tensor.
    pub fn outer_extents(&self) -> Vec<usize> {
        self.factors.iter().map(|f| f.rows()).collect()
    }

    /// Worst orthonormality defect over all factors.
    pub fn orthonormality_defect(&self) -> T {
        self.factors
            .iter()
            .map(|f| f.orthonormality_defect())
            .fold(T::zero(), |a, b| a.max(b))
    }

    /// Evaluates the represented tensor by iterated mode products.
    pub fn reconstruct(&self) -> CoreResult<DenseTensor<T>> {
        let mut t = self.core.clone();
        for (k, f) in self.factors.iter().enumerate() {
            t = t.ttm_t(f, k)?;
        }
        Ok(t)
    }

    pub fn into_parts(self) -> (DenseTensor<T>, Vec<Matrix<T>>) {
        (self.core, self.factors)
    }
}

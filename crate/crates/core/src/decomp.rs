//! HOSVD, sequentially truncated HOSVD, and low-multilinear-rank
//! projection.

use crate::error::{CoreError, CoreResult};
use crate::scalar::Scalar;
use crate::shape::Shape;
use crate::svd::left_singular_basis;
use crate::tensor::DenseTensor;
use crate::tucker::TuckerFactors;

/// Target multilinear rank `(r_1, ..., r_d)`, every entry at least one.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RankTuple {
    ranks: Vec<usize>,
}

impl RankTuple {
    pub fn new(ranks: Vec<usize>) -> CoreResult<Self> {
        if ranks.is_empty() {
            return Err(CoreError::RankOutOfRange("empty rank tuple".into()));
        }
        if ranks.iter().any(|&r| r == 0) {
            return Err(CoreError::RankOutOfRange(format!(
                "zero rank in {ranks:?}"
            )));
        }
        Ok(Self { ranks })
    }

    /// Same rank in every mode.
    pub fn uniform(order: usize, r: usize) -> CoreResult<Self> {
        Self::new(vec![r; order])
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn order(&self) -> usize {
        self.ranks.len()
    }

    pub fn rank(&self, mode: usize) -> usize {
        self.ranks[mode]
    }

    pub fn validate_for(&self, shape: &Shape) -> CoreResult<()> {
        if self.ranks.len() != shape.order() {
            return Err(CoreError::RankOutOfRange(format!(
                "rank tuple {:?} for order-{} tensor",
                self.ranks,
                shape.order()
            )));
        }
        for (k, (&r, &n)) in self.ranks.iter().zip(shape.extents()).enumerate() {
            if r > n {
                return Err(CoreError::RankOutOfRange(format!(
                    "rank {} exceeds extent {} in mode {}",
                    r, n, k
                )));
            }
        }
        Ok(())
    }
}

/// Higher-order SVD: factor `k` holds the `r_k` leading left singular
/// vectors of the mode-k unfolding of `t`; the core is `t` contracted
/// with every factor.
pub fn hosvd<T: Scalar>(t: &DenseTensor<T>, ranks: &RankTuple) -> CoreResult<TuckerFactors<T>> {
    ranks.validate_for(t.shape())?;
    let mut factors = Vec::with_capacity(t.order());
    for k in 0..t.order() {
        let (u, _) = left_singular_basis(&t.unfold(k)?, ranks.rank(k))?;
        factors.push(u);
    }
    let mut core = t.clone();
    for (k, f) in factors.iter().enumerate() {
        core = core.ttm(f, k)?;
    }
    TuckerFactors::new(core, factors)
}

/// Sequentially truncated HOSVD: modes are processed in ascending order
/// and the working tensor is compressed immediately after each factor is
/// found, so the mode-k SVD runs on a tensor whose earlier modes are
/// already reduced.
pub fn st_hosvd<T: Scalar>(t: &DenseTensor<T>, ranks: &RankTuple) -> CoreResult<TuckerFactors<T>> {
    ranks.validate_for(t.shape())?;
    let mut working = t.clone();
    let mut factors = Vec::with_capacity(t.order());
    for k in 0..t.order() {
        let (u, _) = left_singular_basis(&working.unfold(k)?, ranks.rank(k))?;
        working = working.ttm(&u, k)?;
        factors.push(u);
    }
    TuckerFactors::new(working, factors)
}

/// Projection onto the set of tensors of multilinear rank at most
/// `ranks`: ST-HOSVD followed by reconstruction.
pub fn project_to_rank<T: Scalar>(
    t: &DenseTensor<T>,
    ranks: &RankTuple,
) -> CoreResult<DenseTensor<T>> {
    st_hosvd(t, ranks)?.reconstruct()
}

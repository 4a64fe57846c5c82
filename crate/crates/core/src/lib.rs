//! Dense tensors and the multilinear algebra that the reconstruction
//! pipeline is built on: mode-k unfolding/folding, tensor-times-matrix
//! products, truncated SVD, HOSVD / ST-HOSVD, QR orthonormalization and
//! low-multilinear-rank projection.
//!
//! All containers are generic over the floating scalar (see [`Scalar`]);
//! the rest of the workspace uses the `f64` aliases exported below, since
//! the singular-value agreement the aggregation schemes rely on needs
//! double precision.
//!
//! Layout convention: values are linearized with the *first* index varying
//! fastest, and mode-k unfoldings order their columns by the remaining
//! modes in ascending order, lower index fastest. Under this convention
//! the unfolding of a multi-mode product satisfies the usual Kronecker
//! identity without any permutation bookkeeping.

pub mod decomp;
pub mod error;
pub mod matrix;
pub mod qr;
pub mod scalar;
pub mod shape;
pub mod svd;
pub mod tensor;
pub mod tucker;

pub use decomp::{hosvd, project_to_rank, st_hosvd, RankTuple};
pub use error::{CoreError, CoreResult};
pub use matrix::Matrix;
pub use qr::orthonormal_basis_qr;
pub use scalar::Scalar;
pub use shape::Shape;
pub use svd::{truncated_svd, Svd};
pub use tensor::DenseTensor;
pub use tucker::TuckerFactors;

/// `f64` instantiations used throughout the reconstruction pipeline.
pub type DenseTensor64 = DenseTensor<f64>;
pub type Matrix64 = Matrix<f64>;
pub type TuckerFactors64 = TuckerFactors<f64>;

/// Relative threshold below which a normalized singular value is treated
/// as numerically zero when deciding ranks and basis deficiency.
pub const NUMERICAL_RANK_THRESHOLD: f64 = 1e-8;

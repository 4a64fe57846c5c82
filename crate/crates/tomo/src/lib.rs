//! Synthetic parallel-beam tomography: the sparse Radon operator with
//! exact ray/pixel intersection lengths, least-squares loss and gradient,
//! Shepp-Logan style phantoms partitioned into multimodal ground truth,
//! multiplicative speckle noise, and 16-bit graymap export.

pub mod error;
pub mod geometry;
pub mod noise;
pub mod pgm;
pub mod phantom;
pub mod radon;

pub use error::{TomoError, TomoResult};
pub use geometry::Geometry;
pub use noise::add_speckle_noise;
pub use pgm::write_pgm16;
pub use phantom::{default_coefficients, shepp_logan_phantom, synthesize_multimodal_truth, MultimodalTruth};
pub use radon::RadonOperator;

/// Line-integral measurements, one row per angle and one column per
/// beamlet.
pub type Sinogram = fedtucker_core::DenseTensor64;

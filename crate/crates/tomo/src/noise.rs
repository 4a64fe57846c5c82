//! Multiplicative speckle noise.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{TomoError, TomoResult};
use crate::Sinogram;

/// `out = b * (1 + eps)` with `eps ~ Normal(0, sigma^2)` drawn
/// independently per entry from the given stream. Draws are clipped at
/// six standard deviations to keep strongly negative multipliers out of
/// the signal; the distortion is negligible.
pub fn add_speckle_noise<R: Rng>(
    b: &Sinogram,
    sigma: f64,
    rng: &mut R,
) -> TomoResult<Sinogram> {
    if sigma < 0.0 || !sigma.is_finite() {
        return Err(TomoError::InvalidParameter(format!(
            "noise standard deviation {sigma}"
        )));
    }
    let mut out = b.clone();
    for v in out.values_mut() {
        let z: f64 = rng.sample(StandardNormal);
        let eps = sigma * z.clamp(-6.0, 6.0);
        *v *= 1.0 + eps;
    }
    Ok(out)
}

//! Quality and efficiency metrics: PSNR, multiscale SSIM, the
//! quality-per-bit score used to compare aggregation schemes, and the
//! discrepancy-principle stopping rule.

pub mod error;
pub mod ssim;

pub use error::{MetricsError, MetricsResult};
pub use ssim::{auto_scales, ssim};

use fedtucker_core::DenseTensor64;

/// Peak signal-to-noise ratio in dB: `10 log10(peak^2 / MSE)` with the
/// peak taken from the reference image. Identical images report
/// `f64::INFINITY`.
pub fn psnr(x: &DenseTensor64, reference: &DenseTensor64) -> MetricsResult<f64> {
    if x.shape() != reference.shape() {
        return Err(MetricsError::ShapeMismatch(format!(
            "{:?} vs {:?}",
            x.shape().extents(),
            reference.shape().extents()
        )));
    }
    let peak = reference
        .values()
        .iter()
        .copied()
        .fold(f64::NEG_INFINITY, f64::max);
    if peak <= 0.0 {
        return Err(MetricsError::InvalidReference(
            "reference peak must be positive".into(),
        ));
    }
    let mse: f64 = x
        .values()
        .iter()
        .zip(reference.values())
        .map(|(&a, &b)| (a - b) * (a - b))
        .sum::<f64>()
        / x.numel() as f64;
    if mse == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(10.0 * (peak * peak / mse).log10())
}

/// Quality-per-communication score
/// `q / ((1 - q)^gamma * sum_t log2(V_t + 1))` where `q` is the
/// client-averaged SSIM and `V_t` the per-round communication volume in
/// bits. Higher is better. `q == 1` (or an empty volume sum) reports the
/// infinite sentinel.
pub fn gce(ssim_avg: f64, volumes: &[u64], gamma: f64) -> MetricsResult<f64> {
    if !(0.0..=1.0).contains(&ssim_avg) || !ssim_avg.is_finite() {
        return Err(MetricsError::InvalidValue(format!(
            "ssim average {ssim_avg} outside [0, 1]"
        )));
    }
    if gamma < 0.0 || !gamma.is_finite() {
        return Err(MetricsError::InvalidValue(format!("gamma {gamma}")));
    }
    if ssim_avg == 0.0 {
        return Ok(0.0);
    }
    if ssim_avg == 1.0 {
        return Ok(f64::INFINITY);
    }
    let log_volume: f64 = volumes.iter().map(|&v| (v as f64 + 1.0).log2()).sum();
    let denom = (1.0 - ssim_avg).powf(gamma) * log_volume;
    if denom == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(ssim_avg / denom)
}

/// Discrepancy-principle stopping rule: true iff every client's loss has
/// fallen to `max(B_i) * sqrt(theta * tau) * sigma`. A non-positive noise
/// level disables the rule.
pub fn discrepancy_stop(
    losses: &[f64],
    sinograms: &[DenseTensor64],
    theta: usize,
    tau: usize,
    sigma: f64,
) -> bool {
    if sigma <= 0.0 || losses.len() != sinograms.len() {
        return false;
    }
    let scale = ((theta * tau) as f64).sqrt() * sigma;
    losses.iter().zip(sinograms).all(|(&loss, b)| {
        let peak = b.values().iter().copied().fold(f64::NEG_INFINITY, f64::max);
        loss <= peak * scale
    })
}

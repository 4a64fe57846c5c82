//! 16-bit binary portable graymap export for images and sinograms.

use std::io::Write;
use std::path::Path;

use fedtucker_core::DenseTensor64;

use crate::error::{TomoError, TomoResult};

/// Writes a 2-way tensor as a binary 16-bit PGM (`P5`, maxval 65535,
/// big-endian samples), min-max scaled. The scaling is recorded in a
/// sidecar text file at `<path>.scale.txt` so values can be recovered.
pub fn write_pgm16(path: &Path, image: &DenseTensor64) -> TomoResult<()> {
    if image.order() != 2 {
        return Err(TomoError::ShapeMismatch(format!(
            "graymap export needs a 2-way tensor, got order {}",
            image.order()
        )));
    }
    let height = image.shape().extent(0);
    let width = image.shape().extent(1);
    let lo = image
        .values()
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    let hi = image
        .values()
        .iter()
        .copied()
        .fold(f64::NEG_INFINITY, f64::max);
    let span = hi - lo;

    let mut data = Vec::with_capacity(width * height * 2 + 32);
    data.extend_from_slice(format!("P5\n{width} {height}\n65535\n").as_bytes());
    for i in 0..height {
        for j in 0..width {
            let v = image.get(&[i, j]);
            let scaled = if span > 0.0 {
                ((v - lo) / span * 65535.0).round() as u16
            } else {
                0
            };
            data.extend_from_slice(&scaled.to_be_bytes());
        }
    }
    std::fs::write(path, data)?;

    let sidecar = sidecar_path(path);
    let mut f = std::fs::File::create(sidecar)?;
    writeln!(f, "min {lo}")?;
    writeln!(f, "max {hi}")?;
    Ok(())
}

fn sidecar_path(path: &Path) -> std::path::PathBuf {
    let mut s = path.as_os_str().to_os_string();
    s.push(".scale.txt");
    std::path::PathBuf::from(s)
}

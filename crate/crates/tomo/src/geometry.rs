//! Parallel-beam scan geometry.

use crate::error::{TomoError, TomoResult};

/// Scan geometry: projection angles, beamlets per angle, and the pixel
/// grid. Pixels have unit side; the grid is centred at the origin.
///
/// Beamlets are uniformly spaced across the grid's circumscribed diameter
/// so every angle covers the whole object. A ray for angle `a` and offset
/// `s` is `s * (-sin a, cos a) + t * (cos a, sin a)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Geometry {
    angles: Vec<f64>,
    beamlets: usize,
    grid: (usize, usize),
}

impl Geometry {
    /// Uniform angles over `[0, pi)`.
    pub fn parallel(
        angle_count: usize,
        beamlet_count: usize,
        n1: usize,
        n2: usize,
    ) -> TomoResult<Self> {
        let angles = (0..angle_count)
            .map(|i| i as f64 * std::f64::consts::PI / angle_count as f64)
            .collect();
        Self::with_angles(angles, beamlet_count, n1, n2)
    }

    /// Explicit angle list, mostly for tests with hand-picked rays.
    pub fn with_angles(
        angles: Vec<f64>,
        beamlet_count: usize,
        n1: usize,
        n2: usize,
    ) -> TomoResult<Self> {
        if angles.is_empty() {
            return Err(TomoError::InvalidParameter("no projection angles".into()));
        }
        if beamlet_count == 0 {
            return Err(TomoError::InvalidParameter("no beamlets".into()));
        }
        if n1 == 0 || n2 == 0 {
            return Err(TomoError::GridTooSmall(format!("{n1}x{n2}")));
        }
        Ok(Self {
            angles,
            beamlets: beamlet_count,
            grid: (n1, n2),
        })
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    pub fn angle_count(&self) -> usize {
        self.angles.len()
    }

    pub fn beamlet_count(&self) -> usize {
        self.beamlets
    }

    pub fn grid(&self) -> (usize, usize) {
        self.grid
    }

    pub fn ray_count(&self) -> usize {
        self.angle_count() * self.beamlets
    }

    /// Length of the grid diagonal, the span the beamlets cover.
    pub fn diagonal(&self) -> f64 {
        let (n1, n2) = self.grid;
        ((n1 * n1 + n2 * n2) as f64).sqrt()
    }

    /// Perpendicular offset of beamlet `b` from the grid centre; offsets
    /// sit at the centres of `beamlets` uniform cells over the diagonal.
    pub fn beamlet_offset(&self, b: usize) -> f64 {
        let diag = self.diagonal();
        (b as f64 + 0.5) * diag / self.beamlets as f64 - diag / 2.0
    }
}

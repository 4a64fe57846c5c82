//! Shepp-Logan style phantom and its partition into multimodal ground
//! truth.

use fedtucker_core::{DenseTensor64, Shape};

use crate::error::{TomoError, TomoResult};

#[derive(Debug, Clone, Copy)]
struct Ellipse {
    intensity: f64,
    a: f64,
    b: f64,
    x0: f64,
    y0: f64,
    theta_deg: f64,
}

impl Ellipse {
    fn contains(&self, x: f64, y: f64) -> bool {
        let th = self.theta_deg.to_radians();
        let (s, c) = th.sin_cos();
        let dx = x - self.x0;
        let dy = y - self.y0;
        let xr = c * dx + s * dy;
        let yr = -s * dx + c * dy;
        (xr / self.a).powi(2) + (yr / self.b).powi(2) <= 1.0
    }
}

/// Classic ten-ellipse head phantom on the unit square.
const ELLIPSES: [Ellipse; 10] = [
    Ellipse { intensity: 1.00, a: 0.6900, b: 0.9200, x0: 0.00, y0: 0.0000, theta_deg: 0.0 },
    Ellipse { intensity: -0.98, a: 0.6624, b: 0.8740, x0: 0.00, y0: -0.0184, theta_deg: 0.0 },
    Ellipse { intensity: -0.02, a: 0.1100, b: 0.3100, x0: 0.22, y0: 0.0000, theta_deg: -18.0 },
    Ellipse { intensity: -0.02, a: 0.1600, b: 0.4100, x0: -0.22, y0: 0.0000, theta_deg: 18.0 },
    Ellipse { intensity: 0.01, a: 0.2100, b: 0.2500, x0: 0.00, y0: 0.3500, theta_deg: 0.0 },
    Ellipse { intensity: 0.01, a: 0.0460, b: 0.0460, x0: 0.00, y0: 0.1000, theta_deg: 0.0 },
    Ellipse { intensity: 0.01, a: 0.0460, b: 0.0460, x0: 0.00, y0: -0.1000, theta_deg: 0.0 },
    Ellipse { intensity: 0.01, a: 0.0460, b: 0.0230, x0: -0.08, y0: -0.6050, theta_deg: 0.0 },
    Ellipse { intensity: 0.01, a: 0.0230, b: 0.0230, x0: 0.00, y0: -0.6060, theta_deg: 0.0 },
    Ellipse { intensity: 0.01, a: 0.0230, b: 0.0460, x0: 0.06, y0: -0.6050, theta_deg: 0.0 },
];

/// Number of ellipses available for partitioning into element images.
pub const ELLIPSE_COUNT: usize = ELLIPSES.len();

fn pixel_centre(i: usize, j: usize, n1: usize, n2: usize) -> (f64, f64) {
    (
        (i as f64 + 0.5) * 2.0 / n1 as f64 - 1.0,
        (j as f64 + 0.5) * 2.0 / n2 as f64 - 1.0,
    )
}

/// Ellipse-sum phantom sampled at pixel centres, clamped to `[0, 1]`.
pub fn shepp_logan_phantom(n1: usize, n2: usize) -> TomoResult<DenseTensor64> {
    if n1 < 8 || n2 < 8 {
        return Err(TomoError::GridTooSmall(format!(
            "{n1}x{n2}; phantom needs at least 8 pixels per side"
        )));
    }
    let mut values = vec![0.0; n1 * n2];
    for j in 0..n2 {
        for i in 0..n1 {
            let (x, y) = pixel_centre(i, j, n1, n2);
            let mut v = 0.0;
            for e in &ELLIPSES {
                if e.contains(x, y) {
                    v += e.intensity;
                }
            }
            values[i + n1 * j] = v.clamp(0.0, 1.0);
        }
    }
    Ok(DenseTensor64::from_values(Shape::new(vec![n1, n2])?, values)?)
}

/// Ground truth for a multimodal scan: element images for the
/// fluorescence clients and the transmission image defined as their
/// coefficient-weighted sum.
#[derive(Debug, Clone)]
pub struct MultimodalTruth {
    elements: Vec<DenseTensor64>,
    transmission: DenseTensor64,
    coefficients: Vec<f64>,
}

impl MultimodalTruth {
    pub fn elements(&self) -> &[DenseTensor64] {
        &self.elements
    }

    pub fn transmission(&self) -> &DenseTensor64 {
        &self.transmission
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    /// Ground-truth image of client `i` out of `elements + 1` clients:
    /// the element images first, the transmission image last.
    pub fn client_truth(&self, i: usize) -> &DenseTensor64 {
        if i < self.elements.len() {
            &self.elements[i]
        } else {
            &self.transmission
        }
    }

    pub fn client_count(&self) -> usize {
        self.elements.len() + 1
    }
}

/// Default mass-attenuation coefficients: `1/sqrt(m)` for `m` element
/// images, so the squared coefficients sum to one and the multimodality
/// update acts as an exact projection.
pub fn default_coefficients(element_count: usize) -> Vec<f64> {
    vec![1.0 / (element_count as f64).sqrt(); element_count]
}

/// Partitions the phantom into `element_count` element images and the
/// derived transmission image.
///
/// Each pixel is owned by the innermost (highest-index) ellipse containing
/// its centre; ellipses are assigned to element images round-robin. The
/// element images therefore have disjoint supports, sum to the phantom,
/// and the transmission image satisfies `X_N = sum_j c_j X_j` exactly by
/// construction.
pub fn synthesize_multimodal_truth(
    n1: usize,
    n2: usize,
    element_count: usize,
    coefficients: &[f64],
) -> TomoResult<MultimodalTruth> {
    if element_count == 0 {
        return Err(TomoError::InvalidParameter("no element images".into()));
    }
    if element_count > ELLIPSE_COUNT {
        return Err(TomoError::TooManyElements {
            requested: element_count,
            available: ELLIPSE_COUNT,
        });
    }
    if coefficients.len() != element_count {
        return Err(TomoError::InvalidParameter(format!(
            "{} coefficients for {} element images",
            coefficients.len(),
            element_count
        )));
    }
    if coefficients.iter().any(|&c| !(c > 0.0) || !c.is_finite()) {
        return Err(TomoError::InvalidParameter(
            "coefficients must be positive and finite".into(),
        ));
    }
    let phantom = shepp_logan_phantom(n1, n2)?;
    let shape = phantom.shape().clone();
    let mut elements = vec![DenseTensor64::zeros(shape.clone()); element_count];

    for j in 0..n2 {
        for i in 0..n1 {
            let (x, y) = pixel_centre(i, j, n1, n2);
            let mut owner: Option<usize> = None;
            for (e_idx, e) in ELLIPSES.iter().enumerate() {
                if e.contains(x, y) {
                    owner = Some(e_idx);
                }
            }
            if let Some(e_idx) = owner {
                let client = e_idx % element_count;
                let v = phantom.get(&[i, j]);
                elements[client].set(&[i, j], v);
            }
        }
    }

    let mut transmission = DenseTensor64::zeros(shape);
    for (c, e) in coefficients.iter().zip(&elements) {
        transmission.scaled_add_assign(*c, e)?;
    }

    Ok(MultimodalTruth {
        elements,
        transmission,
        coefficients: coefficients.to_vec(),
    })
}

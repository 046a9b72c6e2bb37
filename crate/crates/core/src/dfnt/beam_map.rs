use num_complex::Complex64;
use serde::Serialize;

use crate::linalg::{inner, ComplexVector};
use crate::manifold::{channel_vector, Symbol4D};
use crate::physics::DerivedGeometry;

/// Static Fresnel channel to the point at lateral offset `x` and range `z`.
pub fn point_channel(x: f64, z: f64, geom: &DerivedGeometry) -> ComplexVector {
    channel_vector(&Symbol4D::at((x / z).asin(), z, 0.0), geom)
}

/// Intensity over a (z, x) grid; `intensity[iz][ix]`, peak normalised to 1.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BeamMap {
    pub xs: Vec<f64>,
    pub zs: Vec<f64>,
    pub intensity: Vec<Vec<f64>>,
    /// Un-normalised peak |h_pointᴴw|².
    pub peak: f64,
}

impl BeamMap {
    pub fn argmax(&self) -> (usize, usize) {
        let mut best = (0, 0, f64::NEG_INFINITY);
        for (iz, row) in self.intensity.iter().enumerate() {
            for (ix, &v) in row.iter().enumerate() {
                if v > best.2 {
                    best = (iz, ix, v);
                }
            }
        }
        (best.0, best.1)
    }
}

pub fn beam_intensity_map(w: &[Complex64], xs: &[f64], zs: &[f64], geom: &DerivedGeometry) -> BeamMap {
    let mut intensity: Vec<Vec<f64>> = zs
        .iter()
        .map(|&z| xs.iter().map(|&x| inner(&point_channel(x, z, geom), w).norm_sqr()).collect())
        .collect();
    let peak = intensity.iter().flatten().copied().fold(0.0, f64::max);
    if peak > 0.0 {
        intensity.iter_mut().flatten().for_each(|v| *v /= peak);
    }
    BeamMap { xs: xs.to_vec(), zs: zs.to_vec(), intensity, peak }
}

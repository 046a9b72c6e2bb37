//! Matched-filter bank detection over the manifold grid.

mod acquisition;
mod ser;

pub use acquisition::{acquire, acquire_with, Acquisition};
pub use ser::{ser_monte_carlo, SerResult};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{inner, ComplexVector};
use crate::manifold::{channel_vector, GridIndex, ManifoldGrid, Symbol4D};
use crate::physics::DerivedGeometry;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DetectionResult {
    pub s_hat: Symbol4D,
    pub index: GridIndex,
    /// |h(ŝ)ᴴy|².
    pub metric: f64,
    pub qam_hat: usize,
    pub bits_hat: u64,
}

/// Channel vectors of every spatial-kinematic grid point.
pub struct MatchedFilterBank<'g> {
    grid: &'g ManifoldGrid,
    indices: Vec<GridIndex>,
    filters: Vec<ComplexVector>,
    n: usize,
}

impl<'g> MatchedFilterBank<'g> {
    pub fn new(grid: &'g ManifoldGrid, geom: &DerivedGeometry) -> Self {
        let indices: Vec<GridIndex> = grid.spatial_indices().collect();
        let filters = indices.iter().map(|i| channel_vector(&grid.symbol(*i), geom)).collect();
        Self { grid, indices, filters, n: geom.n }
    }

    pub fn indices(&self) -> &[GridIndex] {
        &self.indices
    }

    pub fn filter(&self, i: usize) -> &[Complex64] {
        &self.filters[i]
    }

    /// Projections h(s)ᴴy for every spatial point, in [`Self::indices`] order.
    pub fn project(&self, y: &[Complex64]) -> Vec<Complex64> {
        self.filters.iter().map(|h| inner(h, y)).collect()
    }

    /// Spatial argmax of |hᴴy|², then minimum-distance QAM on that projection.
    pub fn detect(&self, y: &[Complex64]) -> Result<DetectionResult> {
        if y.len() != self.n {
            return Err(Error::LengthMismatch { expected: self.n, got: y.len() });
        }
        let mut best = (0, Complex64::new(0.0, 0.0), f64::NEG_INFINITY);
        for (i, h) in self.filters.iter().enumerate() {
            let p = inner(h, y);
            let m = p.norm_sqr();
            if m > best.2 {
                best = (i, p, m);
            }
        }
        let qam_hat = self.grid.qam.nearest(best.1);
        let index = GridIndex { qam: qam_hat, ..self.indices[best.0] };
        Ok(DetectionResult {
            s_hat: self.grid.symbol(index),
            index,
            metric: best.2,
            qam_hat,
            bits_hat: self.grid.word_of_index(index),
        })
    }
}

pub fn matched_filter_detect(y: &[Complex64], grid: &ManifoldGrid, geom: &DerivedGeometry) -> Result<DetectionResult> {
    MatchedFilterBank::new(grid, geom).detect(y)
}

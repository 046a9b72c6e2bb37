use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use super::Symbol4D;
use crate::physics::DerivedGeometry;

/// Per-dimension weights of the squared orthogonality distance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrthWeights {
    pub alpha_theta: f64,
    pub alpha_z: f64,
    pub alpha_v: f64,
    pub alpha_d: f64,
}

impl OrthWeights {
    /// One resolution cell per dimension contributes a distance of about 1.
    pub fn from_geometry(geom: &DerivedGeometry) -> Self {
        let d_over_l = geom.aperture / geom.lambda;
        let v_scale = geom.aperture * geom.k / (2.0 * PI * geom.c_light);
        Self {
            alpha_theta: d_over_l * d_over_l,
            alpha_z: 1.0 / (geom.dz_fresnel * geom.dz_fresnel),
            alpha_v: v_scale * v_scale,
            alpha_d: 1.0,
        }
    }

    pub fn scaled(self, f: f64) -> Self {
        Self {
            alpha_theta: self.alpha_theta * f,
            alpha_z: self.alpha_z * f,
            alpha_v: self.alpha_v * f,
            alpha_d: self.alpha_d * f,
        }
    }

    pub fn is_valid(&self) -> bool {
        [self.alpha_theta, self.alpha_z, self.alpha_v, self.alpha_d].iter().all(|a| *a > 0.0)
    }
}

/// Weighted squared distance between two manifold points.
pub fn orthogonality_metric(si: &Symbol4D, sj: &Symbol4D, w: &OrthWeights) -> f64 {
    debug_assert!(w.is_valid());
    let dt = si.theta - sj.theta;
    let dz = si.z - sj.z;
    let dv = si.v - sj.v;
    let dd = (si.qam_value - sj.qam_value).norm_sqr();
    w.alpha_theta * dt * dt + w.alpha_z * dz * dz + w.alpha_v * dv * dv + w.alpha_d * dd
}

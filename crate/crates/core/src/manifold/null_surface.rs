//! Joint depth–velocity null surface of the factorised channel inner product.
//!
//! With normalised separations ṽ = kΔv/c and z̃ = kκ, where κ ≈ Δz/(2z0²) is the
//! depth-mismatch curvature, two channel vectors are orthogonal when
//! ṽNd/2 + z̃N(N−1)d²/4 = mπ.

use std::f64::consts::PI;

use crate::physics::DerivedGeometry;

/// Depth-mismatch curvature for a depth offset `dz` about `z0`.
pub fn kappa(dz: f64, z0: f64) -> f64 {
    dz / (2.0 * z0 * z0)
}

/// Exact curvature difference 1/(2z₁) − 1/(2z₂).
pub fn kappa_exact(z1: f64, z2: f64) -> f64 {
    0.5 / z1 - 0.5 / z2
}

pub fn normalized_velocity(dv: f64, geom: &DerivedGeometry) -> f64 {
    geom.k * dv / geom.c_light
}

pub fn velocity_from_normalized(v_tilde: f64, geom: &DerivedGeometry) -> f64 {
    v_tilde * geom.c_light / geom.k
}

pub fn normalized_curvature(kappa: f64, geom: &DerivedGeometry) -> f64 {
    geom.k * kappa
}

/// Depth offset about z0 whose curvature normalises to `z_tilde`.
pub fn depth_from_normalized(z_tilde: f64, geom: &DerivedGeometry) -> f64 {
    2.0 * geom.z0 * geom.z0 * z_tilde / geom.k
}

/// ṽ on the m-th null surface for a given z̃; decreases linearly in z̃.
pub fn null_surface_velocity(m: u32, z_tilde: f64, geom: &DerivedGeometry) -> f64 {
    assert!(m >= 1, "null order starts at 1");
    let (n, d) = (geom.n as f64, geom.d);
    2.0 * m as f64 * PI / (n * d) - (n - 1.0) * d * z_tilde / 2.0
}

/// z̃ on the m-th null surface for a given ṽ.
pub fn null_surface_curvature(m: u32, v_tilde: f64, geom: &DerivedGeometry) -> f64 {
    let (n, d) = (geom.n as f64, geom.d);
    (2.0 * m as f64 * PI / (n * d) - v_tilde) * 2.0 / ((n - 1.0) * d)
}

/// Velocity spacing of the m-th pure-velocity null, m·λc/(Nd).
pub fn velocity_null_spacing(m: u32, geom: &DerivedGeometry) -> f64 {
    velocity_from_normalized(null_surface_velocity(m, 0.0, geom), geom)
}

/// Depth spacing of the m-th pure-depth null, 8πm·z0²/(kN(N−1)d²).
pub fn depth_null_spacing(m: u32, geom: &DerivedGeometry) -> f64 {
    depth_from_normalized(null_surface_curvature(m, 0.0, geom), geom)
}

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::linalg::{cis, ComplexVector};
use crate::physics::DerivedGeometry;

/// One point (θ, z, v, d) of the symbol manifold.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Symbol4D {
    pub theta: f64,
    pub z: f64,
    pub v: f64,
    pub qam_index: usize,
    pub qam_value: Complex64,
}

impl Symbol4D {
    /// Spatial-kinematic point carrying the unit symbol.
    pub fn at(theta: f64, z: f64, v: f64) -> Self {
        Self { theta, z, v, qam_index: 0, qam_value: Complex64::new(1.0, 0.0) }
    }
}

/// Per-element phase (without the minus sign) of h(θ, z, v) at edge position ξ.
#[inline]
pub(super) fn channel_phase(geom: &DerivedGeometry, sin_theta: f64, z: f64, v: f64, xi: f64) -> f64 {
    geom.k * (xi * (sin_theta + v / geom.c_light) + xi * xi / (2.0 * z))
}

/// Angle, depth and velocity factors a(θ), c(z), b(v); all unit modulus.
pub fn steering_vectors(s: &Symbol4D, geom: &DerivedGeometry) -> (ComplexVector, ComplexVector, ComplexVector) {
    let st = s.theta.sin();
    let k = geom.k;
    let mut a = Vec::with_capacity(geom.n);
    let mut c = Vec::with_capacity(geom.n);
    let mut b = Vec::with_capacity(geom.n);
    for n in 0..geom.n {
        let xi = geom.edge_position(n);
        a.push(cis(-k * xi * st));
        c.push(cis(-k * xi * xi / (2.0 * s.z)));
        b.push(cis(-k * xi * s.v / geom.c_light));
    }
    (a, c, b)
}

/// h(θ, z, v) = a ⊙ c ⊙ b / √N, unit norm.
pub fn channel_vector(s: &Symbol4D, geom: &DerivedGeometry) -> ComplexVector {
    let st = s.theta.sin();
    let scale = 1.0 / (geom.n as f64).sqrt();
    (0..geom.n)
        .map(|n| cis(-channel_phase(geom, st, s.z, s.v, geom.edge_position(n))) * scale)
        .collect()
}

/// ⟨h(s_i), h(s_j)⟩; equals 1 for identical spatial-kinematic coordinates.
pub fn manifold_correlation(si: &Symbol4D, sj: &Symbol4D, geom: &DerivedGeometry) -> Complex64 {
    let (sti, stj) = (si.theta.sin(), sj.theta.sin());
    let mut acc = Complex64::new(0.0, 0.0);
    for n in 0..geom.n {
        let xi = geom.edge_position(n);
        let dphi = channel_phase(geom, sti, si.z, si.v, xi) - channel_phase(geom, stj, sj.z, sj.v, xi);
        acc += cis(dphi);
    }
    acc / geom.n as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{inner, norm};
    use crate::physics::{derive_geometry, SystemConfig};
    use proptest::prelude::*;

    fn geom(n: usize) -> DerivedGeometry {
        derive_geometry(&SystemConfig { n, ..Default::default() }).unwrap()
    }

    #[test]
    fn trivial_factors() {
        let g = geom(64);
        let (a, _, b) = steering_vectors(&Symbol4D::at(0.0, 30.0, 0.0), &g);
        assert!(a.iter().all(|x| (x - Complex64::new(1.0, 0.0)).norm() < 1e-15));
        assert!(b.iter().all(|x| (x - Complex64::new(1.0, 0.0)).norm() < 1e-15));
    }

    #[test]
    fn self_correlation_is_one() {
        let g = geom(4096);
        let s = Symbol4D::at(0.2, 30.4, 120.0);
        let c = manifold_correlation(&s, &s, &g);
        assert!((c - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn hadamard_factorisation(theta in -1.0f64..1.0, z in 5.0f64..80.0, v in -300.0f64..300.0) {
            let g = geom(256);
            let s = Symbol4D::at(theta, z, v);
            let (a, c, b) = steering_vectors(&s, &g);
            let h = channel_vector(&s, &g);
            let scale = 1.0 / 16.0;
            for n in 0..256 {
                prop_assert!((a[n].norm() - 1.0).abs() < 1e-12);
                prop_assert!((h[n] - a[n] * c[n] * b[n] * scale).norm() < 1e-12);
            }
            prop_assert!((norm(&h) - 1.0).abs() < 1e-12);
        }

        #[test]
        fn correlation_matches_vector_inner_product(
            t1 in -0.5f64..0.5, t2 in -0.5f64..0.5, z1 in 20.0f64..40.0, z2 in 20.0f64..40.0,
            v1 in 0.0f64..2e5, v2 in 0.0f64..2e5,
        ) {
            let g = geom(512);
            let (s1, s2) = (Symbol4D::at(t1, z1, v1), Symbol4D::at(t2, z2, v2));
            let direct = inner(&channel_vector(&s1, &g), &channel_vector(&s2, &g));
            prop_assert!((direct - manifold_correlation(&s1, &s2, &g)).norm() < 1e-10);
        }
    }
}

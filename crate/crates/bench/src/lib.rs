//! Shared fixtures for the criterion benches.

use num_complex::Complex64;
use rand::Rng;

use fstm_core::physics::{derive_geometry, DerivedGeometry, SystemConfig};
use fstm_core::rng::stream_rng;

/// Reference parameters at array size `n`.
pub fn geometry(n: usize) -> (SystemConfig, DerivedGeometry) {
    let cfg = SystemConfig { n, ..SystemConfig::default() };
    let geom = derive_geometry(&cfg).expect("valid bench geometry");
    (cfg, geom)
}

/// Deterministic complex test signal with entries in the unit square.
pub fn signal(n: usize, seed: u64) -> Vec<Complex64> {
    let mut rng = stream_rng(seed, 0);
    (0..n).map(|_| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)).collect()
}

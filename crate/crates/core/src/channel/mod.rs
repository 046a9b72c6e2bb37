//! Time-sampled near-field channels for moving users, and the beamformer
//! weight series each scheme applies over the integration window.

mod schemes;

pub use schemes::{btsm_codebook, weights_series, Scheme, SchemeParams};

use rand::Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::linalg::{cis, ComplexMatrix};
use crate::physics::{atmospheric_amplitude, doppler_frequency, DerivedGeometry, SystemConfig};

/// User walking laterally at speed `v` from offset `x0`, at range `z`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryUser {
    pub x0: f64,
    pub v: f64,
    pub z: f64,
}

impl TrajectoryUser {
    #[inline]
    pub fn position(&self, t: f64) -> f64 {
        self.x0 + self.v * t
    }
}

/// Uniform samples over [−T/2, T/2], endpoints included.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeGrid {
    pub times: Vec<f64>,
}

impl TimeGrid {
    /// Smallest sample count giving eight samples per Doppler cycle at v_max.
    pub fn min_samples(cfg: &SystemConfig) -> usize {
        let cycles = (doppler_frequency(cfg.v_max, cfg) * cfg.t_int).abs().ceil() as usize;
        (8 * cycles).max(64)
    }

    pub fn new(cfg: &SystemConfig) -> Result<Self> {
        let need = Self::min_samples(cfg);
        if cfg.n_t < need {
            return Err(Error::InvalidConfig(format!("n_t = {} below {need} samples for the Doppler at v_max", cfg.n_t)));
        }
        Ok(Self::unchecked(cfg.n_t, cfg.t_int))
    }

    pub(crate) fn unchecked(n_t: usize, t_int: f64) -> Self {
        let step = t_int / (n_t - 1) as f64;
        Self { times: (0..n_t).map(|i| -0.5 * t_int + i as f64 * step).collect() }
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }
}

/// Per-element channel h_n(t), one column per time sample.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelSeries {
    pub h: ComplexMatrix,
    pub times: Vec<f64>,
}

/// Exact spherical propagation, carrier Doppler and i.i.d. phase noise.
pub fn simulate_channel<R: Rng + ?Sized>(
    user: &TrajectoryUser,
    cfg: &SystemConfig,
    geom: &DerivedGeometry,
    rng: &mut R,
) -> Result<ChannelSeries> {
    let grid = TimeGrid::new(cfg)?;
    let n = geom.n;
    let amp = atmospheric_amplitude(cfg.alpha_atm, user.z) / (n as f64).sqrt();
    let f_d = doppler_frequency(user.v, cfg);
    let noise = (cfg.sigma_phi > 0.0).then(|| Normal::new(0.0, cfg.sigma_phi).expect("sigma_phi >= 0"));
    let z2 = user.z * user.z;
    let mut h = ComplexMatrix::zeros(n, grid.len());
    for (col, &t) in h.columns_mut().zip(&grid.times) {
        let x = user.position(t);
        let doppler = 2.0 * PI * f_d * t;
        for (hn, &xi) in col.iter_mut().zip(&geom.xi) {
            let dx = xi - x;
            let r = (z2 + dx * dx).sqrt();
            let phi = noise.as_ref().map_or(0.0, |d| d.sample(rng));
            *hn = cis(-geom.k * r - doppler + phi) * amp;
        }
    }
    Ok(ChannelSeries { h, times: grid.times })
}

/// Element Doppler minus the scalar carrier Doppler at aperture position ξ.
pub fn nf_doppler_deviation(xi: f64, v: f64, geom: &DerivedGeometry) -> f64 {
    let scale = 2.0 * geom.f_c * v / geom.c_light;
    scale * xi / (geom.z0 * geom.z0 + xi * xi).sqrt() - scale
}

/// True element Doppler (2f_c/c)·v·ξ/√(z0² + ξ²).
pub fn nf_element_doppler(xi: f64, v: f64, geom: &DerivedGeometry) -> f64 {
    nf_doppler_deviation(xi, v, geom) + 2.0 * geom.f_c * v / geom.c_light
}

/// [`nf_doppler_deviation`] at every element.
pub fn nf_doppler_profile(v: f64, geom: &DerivedGeometry) -> Vec<f64> {
    geom.xi.iter().map(|&xi| nf_doppler_deviation(xi, v, geom)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{inner, norm};
    use crate::physics::derive_geometry;
    use crate::rng::stream_rng;

    fn setup(n: usize) -> (SystemConfig, DerivedGeometry) {
        let cfg = SystemConfig { n, n_t: 1024, ..SystemConfig::default() };
        let geom = derive_geometry(&cfg).unwrap();
        (cfg, geom)
    }

    #[test]
    fn time_grid_is_centred() {
        let g = TimeGrid::new(&SystemConfig { n_t: 1024, ..Default::default() }).unwrap();
        assert_eq!(g.times[0], -0.25e-3);
        assert!((g.times[1023] - 0.25e-3).abs() < 1e-18);
        assert!(g.times.iter().sum::<f64>().abs() < 1e-15);
        assert_eq!(TimeGrid::min_samples(&SystemConfig::default()), 752);
        assert!(TimeGrid::new(&SystemConfig { n_t: 512, ..Default::default() }).is_err());
    }

    #[test]
    fn static_channel_is_constant() {
        let (cfg, geom) = setup(256);
        let cfg = SystemConfig { sigma_phi: 0.0, ..cfg };
        let user = TrajectoryUser { x0: 0.0, v: 0.0, z: cfg.z0 };
        let s = simulate_channel(&user, &cfg, &geom, &mut stream_rng(1, 0)).unwrap();
        let first = s.h.column(0).to_vec();
        assert!(s.h.columns().all(|c| c == first.as_slice()));
    }

    #[test]
    fn deterministic_given_stream() {
        let (cfg, geom) = setup(128);
        let user = TrajectoryUser { x0: 0.01, v: 120.0, z: cfg.z0 };
        let a = simulate_channel(&user, &cfg, &geom, &mut stream_rng(9, 4)).unwrap();
        let b = simulate_channel(&user, &cfg, &geom, &mut stream_rng(9, 4)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn column_norm_is_the_atmospheric_amplitude() {
        let (cfg, geom) = setup(256);
        let user = TrajectoryUser { x0: 0.0, v: 200.0, z: cfg.z0 };
        let s = simulate_channel(&user, &cfg, &geom, &mut stream_rng(1, 0)).unwrap();
        let a = atmospheric_amplitude(cfg.alpha_atm, cfg.z0);
        assert!(s.h.columns().all(|c| (norm(c) - a).abs() < 1e-12));
    }

    #[test]
    fn explicit_doppler_spans_the_window() {
        let cfg = SystemConfig { c_light: 2.998e8, ..Default::default() };
        let cycles = doppler_frequency(200.0, &cfg) * cfg.t_int;
        assert!((cycles - 93.4).abs() < 0.05);
        // On the far-field boresight element pair the phase advance is the Doppler alone.
        let (cfg, geom) = setup(64);
        let cfg = SystemConfig { sigma_phi: 0.0, ..cfg };
        let user = TrajectoryUser { x0: 0.0, v: 200.0, z: cfg.z0 };
        let s = simulate_channel(&user, &cfg, &geom, &mut stream_rng(1, 0)).unwrap();
        let mut total = 0.0;
        for t in 1..s.times.len() {
            let step = inner(s.h.column(t), s.h.column(t - 1)).arg();
            total += step;
        }
        let want = 2.0 * PI * doppler_frequency(200.0, &cfg) * cfg.t_int;
        assert!((total - want).abs() / want < 1e-3);
    }

    #[test]
    fn doppler_profile_shape() {
        let cfg = SystemConfig { c_light: 2.998e8, ..Default::default() };
        let geom = derive_geometry(&cfg).unwrap();
        assert!((nf_doppler_deviation(0.0, 200.0, &geom) / 1e3 + 186.8).abs() < 0.1);
        let edge = geom.aperture / 2.0;
        assert!((nf_doppler_deviation(edge, 200.0, &geom) / 1e3 + 173.2).abs() < 0.2);
        assert!((nf_element_doppler(edge, 200.0, &geom) / 1e3 - 13.6).abs() < 0.1);
        assert!(nf_doppler_profile(0.0, &geom).iter().all(|&f| f == 0.0));
        let prof = nf_doppler_profile(200.0, &geom);
        assert!(prof.windows(2).all(|w| w[1] > w[0]));
    }
}

//! Evaluation quantities: coherent gain, normalised correlation, spectral
//! efficiency, codebook sizing and the multi-user capacity model.

mod capacity;

pub use capacity::{peak_sum_rate, sinr_multiuser, sum_rate, CapacityModel, CapacityScheme};

use num_complex::Complex64;
use serde::Serialize;

use crate::channel::{simulate_channel, weights_series, Scheme, TrajectoryUser};
use crate::error::{Error, Result};
use crate::linalg::{inner, ComplexMatrix};
use crate::physics::{inverse_sinc, DerivedGeometry, SystemConfig};
use crate::rng::stream_rng;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GainResult {
    pub g: f64,
    pub g_ref: f64,
    pub rho: f64,
}

impl GainResult {
    pub fn new(g: f64, g_ref: f64) -> Self {
        Self { g, g_ref, rho: g / g_ref }
    }

    /// Gain relative to the reference, in dB.
    pub fn db(&self) -> f64 {
        20.0 * self.rho.log10()
    }
}

/// |E_t[h(t)ᴴ w(t)]|, averaged coherently.
pub fn coherent_gain(h: &ComplexMatrix, w: &ComplexMatrix) -> Result<f64> {
    if h.rows() != w.rows() || h.cols() != w.cols() {
        return Err(Error::ShapeMismatch(format!(
            "channel {}x{} vs weights {}x{}",
            h.rows(),
            h.cols(),
            w.rows(),
            w.cols()
        )));
    }
    let sum: Complex64 = h.columns().zip(w.columns()).map(|(a, b)| inner(a, b)).sum();
    Ok((sum / h.cols() as f64).norm())
}

/// Tracking gain for a static, noise-free user on boresight.
pub fn reference_gain(cfg: &SystemConfig, geom: &DerivedGeometry) -> Result<f64> {
    let quiet = SystemConfig { sigma_phi: 0.0, ..cfg.clone() };
    let user = TrajectoryUser { x0: 0.0, v: 0.0, z: cfg.z0 };
    let h = simulate_channel(&user, &quiet, geom, &mut stream_rng(cfg.seed, u64::MAX))?;
    let w = weights_series(Scheme::Fsm, &user, &quiet, geom)?;
    coherent_gain(&h.h, &w)
}

/// log₂(1 + SNR·ρ²/(1 + SNR·(1 − ρ²))).
pub fn spectral_efficiency(rho: f64, snr_linear: f64) -> f64 {
    let r2 = rho * rho;
    (1.0 + snr_linear * r2 / (1.0 + snr_linear * (1.0 - r2))).log2()
}

/// Smallest velocity codebook keeping the worst-case correlation above `rho_min`.
pub fn btsm_codebook_size(rho_min: f64, f_c: f64, v_max: f64, t_int: f64, c: f64) -> Result<usize> {
    if !(rho_min > 0.0 && rho_min < 1.0) {
        return Err(Error::Domain { value: rho_min, domain: "(0, 1)" });
    }
    let x = inverse_sinc(rho_min)?;
    Ok((f_c * v_max * t_int / (c * x)).ceil() as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::norm;
    use crate::physics::{derive_geometry, sinc_norm};

    #[test]
    fn perfect_match_gives_mean_norm() {
        let data: Vec<Complex64> = (0..12).map(|i| Complex64::new(i as f64 * 0.1, 1.0 - i as f64 * 0.05)).collect();
        let h = ComplexMatrix::from_columns(3, data).unwrap();
        let mut w = h.clone();
        w.columns_mut().for_each(crate::linalg::normalize);
        let want = h.columns().map(norm).sum::<f64>() / 4.0;
        assert!((coherent_gain(&h, &w).unwrap() - want).abs() < 1e-12);
        assert!(coherent_gain(&h, &ComplexMatrix::zeros(3, 3)).is_err());
    }

    #[test]
    fn static_focus_follows_the_sinc() {
        let cfg = SystemConfig { n: 1024, n_t: 1024, sigma_phi: 0.0, ..Default::default() };
        let geom = derive_geometry(&cfg).unwrap();
        let g_ref = reference_gain(&cfg, &geom).unwrap();
        let user = TrajectoryUser { x0: 0.0, v: 25.0, z: cfg.z0 };
        let h = simulate_channel(&user, &cfg, &geom, &mut stream_rng(1, 1)).unwrap();
        let w = weights_series(Scheme::Ttd, &user, &cfg, &geom).unwrap();
        let rho = coherent_gain(&h.h, &w).unwrap() / g_ref;
        let want = sinc_norm(crate::physics::doppler_frequency(25.0, &cfg) * cfg.t_int).abs();
        assert!((rho - want).abs() < 0.02, "{rho} vs {want}");
    }

    #[test]
    fn spectral_efficiency_values() {
        assert!((spectral_efficiency(1.0, 100.0) - 101f64.log2()).abs() < 1e-12);
        assert!((spectral_efficiency(0.998, 100.0) - 6.16).abs() < 0.02);
        assert_eq!(spectral_efficiency(0.0, 100.0), 0.0);
        let mut prev = -1.0;
        for i in 0..=100 {
            let se = spectral_efficiency(i as f64 / 100.0, 100.0);
            assert!(se > prev);
            prev = se;
        }
    }

    #[test]
    fn codebook_sizing() {
        assert_eq!(btsm_codebook_size(0.9, 140e9, 200.0, 0.5e-3, 3e8).unwrap(), 187);
        assert!(btsm_codebook_size(0.99, 140e9, 200.0, 0.5e-3, 3e8).unwrap() > 187);
        // 140e9·200·0.5e-3/(3e8·0.60340) = 77.34
        assert_eq!(btsm_codebook_size(0.5, 140e9, 200.0, 0.5e-3, 3e8).unwrap(), 78);
        assert!(btsm_codebook_size(1.0, 140e9, 200.0, 0.5e-3, 3e8).is_err());
    }
}

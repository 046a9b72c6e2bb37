//! Physical constants, system configuration and closed-form geometry.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};

pub const C_LIGHT: f64 = 299_792_458.0;

/// Scalar system parameters. JSON keys match the serde names below.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SystemConfig {
    /// Carrier frequency [Hz].
    pub f_c: f64,
    /// Element count, a power of two.
    #[serde(rename = "N")]
    pub n: usize,
    pub d_over_lambda: f64,
    /// Reference range [m]; also the user range r0.
    pub z0: f64,
    pub v_max: f64,
    /// Coherent integration window [s].
    #[serde(rename = "T_int")]
    pub t_int: f64,
    pub snr_db: f64,
    /// STM angular frequency [rad/s].
    pub omega: f64,
    /// Phase-noise standard deviation [rad].
    pub sigma_phi: f64,
    /// Atmospheric loss [dB/km].
    pub alpha_atm: f64,
    pub c_light: f64,
    pub n_mc: usize,
    pub n_t: usize,
    pub seed: u64,
}

impl Default for SystemConfig {
    fn default() -> Self {
        Self {
            f_c: 140e9,
            n: 4096,
            d_over_lambda: 0.5,
            z0: 30.0,
            v_max: 200.0,
            t_int: 0.5e-3,
            snr_db: 20.0,
            omega: 2.0 * PI * 10e3,
            sigma_phi: 0.02,
            alpha_atm: 12.0,
            c_light: C_LIGHT,
            n_mc: 64,
            n_t: 4096,
            seed: 20_240_601,
        }
    }
}

impl SystemConfig {
    /// Reduced preset that keeps every experiment within minutes on one machine.
    pub fn desk() -> Self {
        Self { n: 1024, n_t: 1024, n_mc: 16, ..Self::default() }
    }

    pub fn snr_linear(&self) -> f64 {
        10f64.powf(self.snr_db / 10.0)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidConfig(msg.to_string()));
        let finite = [
            self.f_c, self.d_over_lambda, self.z0, self.v_max, self.t_int, self.omega,
            self.sigma_phi, self.alpha_atm, self.c_light,
        ];
        if finite.iter().any(|x| !x.is_finite()) || self.snr_db.is_nan() {
            return bad("non-finite parameter");
        }
        if self.f_c <= 0.0 {
            return bad("f_c must be > 0");
        }
        if self.n < 2 || !self.n.is_power_of_two() {
            return bad("N must be a power of two and at least 2");
        }
        if self.d_over_lambda <= 0.0 {
            return bad("d_over_lambda must be > 0");
        }
        if self.z0 <= 0.0 {
            return bad("z0 must be > 0");
        }
        if self.t_int <= 0.0 {
            return bad("T_int must be > 0");
        }
        if self.n_t < 2 {
            return bad("n_t must be at least 2");
        }
        if self.sigma_phi < 0.0 {
            return bad("sigma_phi must be >= 0");
        }
        if self.c_light <= 0.0 {
            return bad("c_light must be > 0");
        }
        if self.v_max < 0.0 {
            return bad("v_max must be >= 0");
        }
        if self.n_mc == 0 {
            return bad("n_mc must be at least 1");
        }
        Ok(())
    }
}

/// Quantities that follow from a [`SystemConfig`] in closed form.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DerivedGeometry {
    pub n: usize,
    pub f_c: f64,
    pub c_light: f64,
    pub z0: f64,
    pub lambda: f64,
    pub d: f64,
    /// Aperture length N·d.
    pub aperture: f64,
    pub k: f64,
    pub fresnel_number: f64,
    pub dx_rayleigh: f64,
    pub dz_fresnel: f64,
    pub t_c: f64,
    pub w_spot: f64,
    /// Element positions, centred on the array midpoint.
    pub xi: Vec<f64>,
}

pub fn derive_geometry(cfg: &SystemConfig) -> Result<DerivedGeometry> {
    cfg.validate()?;
    let lambda = cfg.c_light / cfg.f_c;
    let d = cfg.d_over_lambda * lambda;
    let n = cfg.n;
    let aperture = n as f64 * d;
    let half = (n as f64 - 1.0) / 2.0;
    let xi = (0..n).map(|i| (i as f64 - half) * d).collect();
    let t_c = if cfg.v_max > 0.0 { lambda / (2.0 * cfg.v_max) } else { f64::INFINITY };
    Ok(DerivedGeometry {
        n,
        f_c: cfg.f_c,
        c_light: cfg.c_light,
        z0: cfg.z0,
        lambda,
        d,
        aperture,
        k: 2.0 * PI / lambda,
        fresnel_number: aperture * aperture / (4.0 * lambda * cfg.z0),
        dx_rayleigh: lambda * cfg.z0 / aperture,
        dz_fresnel: 2.0 * lambda * cfg.z0 * cfg.z0 / (aperture * aperture),
        t_c,
        w_spot: 2.44 * lambda * cfg.z0 / aperture,
        xi,
    })
}

impl DerivedGeometry {
    /// Position of element `n` measured from the first element, `n·d`.
    ///
    /// Steering vectors and the DFnT chirps index the aperture from its edge;
    /// the propagation model uses the centred `xi`.
    #[inline]
    pub fn edge_position(&self, n: usize) -> f64 {
        n as f64 * self.d
    }

    /// Upper end of the radiative near-field region, 2D²/λ.
    pub fn fresnel_limit(&self) -> f64 {
        2.0 * self.aperture * self.aperture / self.lambda
    }
}

/// Carrier Doppler 2·f_c·v/c.
pub fn doppler_frequency(v: f64, cfg: &SystemConfig) -> f64 {
    2.0 * cfg.f_c * v / cfg.c_light
}

/// Amplitude factor for atmospheric loss over range `r` [m].
pub fn atmospheric_amplitude(alpha_db_per_km: f64, r: f64) -> f64 {
    10f64.powf(-alpha_db_per_km * r / 1000.0 / 20.0)
}

/// sin(πx)/(πx).
pub fn sinc_norm(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        let px = PI * x;
        px.sin() / px
    }
}

/// Smallest x ≥ 0 with `sinc_norm(x) = rho_min`, by bisection on the main lobe.
pub fn inverse_sinc(rho_min: f64) -> Result<f64> {
    if !(rho_min > 0.0 && rho_min <= 1.0) {
        return Err(Error::Domain { value: rho_min, domain: "(0, 1]" });
    }
    if rho_min == 1.0 {
        return Ok(0.0);
    }
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while hi - lo > 1e-13 {
        let mid = 0.5 * (lo + hi);
        if sinc_norm(mid) > rho_min {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

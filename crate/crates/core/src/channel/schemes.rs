use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use super::{TimeGrid, TrajectoryUser};
use crate::error::{Error, Result};
use crate::linalg::{cis, ComplexMatrix};
use crate::physics::{doppler_frequency, DerivedGeometry, SystemConfig};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SchemeParams {
    /// Velocity codebook size for beam-space tracking.
    pub b_cb: usize,
    /// Doppler bins for the delay-Doppler baseline.
    pub n_doppler_bins: usize,
}

impl Default for SchemeParams {
    fn default() -> Self {
        Self { b_cb: 16, n_doppler_bins: 32 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Scheme {
    /// Tracks position and Doppler with the true velocity.
    Fsm,
    /// Tracks with the nearest entry of a half-offset velocity codebook.
    Btsm { b_cb: usize },
    /// Static exact-delay focus.
    Ttd,
    /// Far-field steering with quantised Doppler compensation.
    OtfsStyle { n_doppler_bins: usize },
    /// Static Fresnel focus.
    Ldma,
}

impl Scheme {
    pub fn name(&self) -> &'static str {
        match self {
            Scheme::Fsm => "fsm",
            Scheme::Btsm { .. } => "btsm",
            Scheme::Ttd => "ttd",
            Scheme::OtfsStyle { .. } => "otfs",
            Scheme::Ldma => "ldma",
        }
    }

    pub fn all(p: &SchemeParams) -> [Scheme; 5] {
        [
            Scheme::Fsm,
            Scheme::Btsm { b_cb: p.b_cb },
            Scheme::Ttd,
            Scheme::OtfsStyle { n_doppler_bins: p.n_doppler_bins },
            Scheme::Ldma,
        ]
    }

    pub fn parse_with(s: &str, p: &SchemeParams) -> Result<Scheme> {
        let scheme = match s.trim().to_ascii_lowercase().as_str() {
            "fsm" => Scheme::Fsm,
            "btsm" => Scheme::Btsm { b_cb: p.b_cb },
            "ttd" => Scheme::Ttd,
            "otfs" | "otfs_style" => Scheme::OtfsStyle { n_doppler_bins: p.n_doppler_bins },
            "ldma" => Scheme::Ldma,
            _ => return Err(Error::Unknown { kind: "scheme", name: s.to_string() }),
        };
        scheme.validate()?;
        Ok(scheme)
    }

    fn validate(&self) -> Result<()> {
        match *self {
            Scheme::Btsm { b_cb: 0 } => Err(Error::InvalidConfig("b_cb must be at least 1".into())),
            Scheme::OtfsStyle { n_doppler_bins: 0 } => Err(Error::InvalidConfig("n_doppler_bins must be at least 1".into())),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Scheme::parse_with(s, &SchemeParams::default())
    }
}

/// Bin-centre velocities (i + ½)·v_max/B.
pub fn btsm_codebook(b_cb: usize, v_max: f64) -> Vec<f64> {
    (0..b_cb).map(|i| (i as f64 + 0.5) * v_max / b_cb as f64).collect()
}

fn nearest(values: &[f64], x: f64) -> f64 {
    values.iter().copied().min_by(|a, b| (a - x).abs().total_cmp(&(b - x).abs())).unwrap_or(0.0)
}

/// Weights w(t) for one scheme, in the channel's phase convention so that the
/// coherent gain is hᴴw. Every column is unit norm.
pub fn weights_series(
    scheme: Scheme,
    est: &TrajectoryUser,
    cfg: &SystemConfig,
    geom: &DerivedGeometry,
) -> Result<ComplexMatrix> {
    scheme.validate()?;
    let grid = TimeGrid::new(cfg)?;
    let n = geom.n;
    let scale = 1.0 / (n as f64).sqrt();
    let k = geom.k;
    let z = est.z;
    let mut w = ComplexMatrix::zeros(n, grid.len());

    let tracking = |w: &mut ComplexMatrix, v_est: f64| {
        let f_d = doppler_frequency(v_est, cfg);
        for (col, &t) in w.columns_mut().zip(&grid.times) {
            let x = est.x0 + v_est * t;
            let temporal = 2.0 * PI * f_d * t;
            for (wn, &xi) in col.iter_mut().zip(&geom.xi) {
                let dx = xi - x;
                *wn = cis(-(k * dx * dx / (2.0 * z) + temporal)) * scale;
            }
        }
    };
    let fill_static = |w: &mut ComplexMatrix, phase: &dyn Fn(f64) -> f64| {
        let col: Vec<_> = geom.xi.iter().map(|&xi| cis(-phase(xi)) * scale).collect();
        for c in w.columns_mut() {
            c.copy_from_slice(&col);
        }
    };

    match scheme {
        Scheme::Fsm => tracking(&mut w, est.v),
        Scheme::Btsm { b_cb } => tracking(&mut w, nearest(&btsm_codebook(b_cb, cfg.v_max), est.v)),
        Scheme::Ttd => fill_static(&mut w, &|xi| k * (z * z + (xi - est.x0).powi(2)).sqrt()),
        Scheme::Ldma => fill_static(&mut w, &|xi| k * (xi - est.x0).powi(2) / (2.0 * z)),
        Scheme::OtfsStyle { n_doppler_bins } => {
            let f_max = doppler_frequency(cfg.v_max, cfg);
            let bins: Vec<f64> = (0..n_doppler_bins).map(|i| (i as f64 + 0.5) * f_max / n_doppler_bins as f64).collect();
            let f_q = nearest(&bins, doppler_frequency(est.v, cfg));
            let sin_theta = est.x0 / z;
            for (col, &t) in w.columns_mut().zip(&grid.times) {
                let temporal = 2.0 * PI * f_q * t;
                for (wn, &xi) in col.iter_mut().zip(&geom.xi) {
                    *wn = cis(k * xi * sin_theta - temporal) * scale;
                }
            }
        }
    }
    Ok(w)
}

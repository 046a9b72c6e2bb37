use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CapacityScheme {
    /// One user per (angle, depth, velocity) point.
    Fsm,
    /// One user per (angle, depth) point.
    Ttd,
    /// One user per angle.
    Ldma,
}

impl CapacityScheme {
    pub fn name(self) -> &'static str {
        match self {
            Self::Fsm => "fsm",
            Self::Ttd => "ttd",
            Self::Ldma => "ldma",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CapacityModel {
    pub k_max: usize,
    pub snr_linear: f64,
}

impl CapacityModel {
    pub fn new(scheme: CapacityScheme, a: usize, b: usize, c: usize, snr_linear: f64) -> Self {
        let k_max = match scheme {
            CapacityScheme::Fsm => a * b * c,
            CapacityScheme::Ttd => a * b,
            CapacityScheme::Ldma => a,
        };
        assert!(k_max >= 1, "cardinalities must be positive");
        Self { k_max, snr_linear }
    }
}

/// Per-user SINR with K users sharing `model.k_max` orthogonal points.
pub fn sinr_multiuser(k: usize, model: &CapacityModel) -> f64 {
    assert!(k >= 1);
    let kf = k as f64;
    let base = model.snr_linear / kf;
    if k <= model.k_max {
        base
    } else {
        let over = kf / model.k_max as f64 - 1.0;
        base / (1.0 + model.snr_linear * over * over)
    }
}

pub fn sum_rate(k: usize, model: &CapacityModel) -> f64 {
    k as f64 * (1.0 + sinr_multiuser(k, model)).log2()
}

/// Sum rate with all A·B·C points occupied.
pub fn peak_sum_rate(a: usize, b: usize, c: usize, snr_linear: f64) -> f64 {
    let abc = (a * b * c) as f64;
    abc * (1.0 + snr_linear / abc).log2()
}

//! Space-time modulation ramp u(ξ, t) = exp(j(Ωt + gξ)).

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StmRamp {
    /// Spatial phase gradient [rad/m].
    pub g: f64,
    pub omega: f64,
    pub v_syn: f64,
}

impl StmRamp {
    pub fn for_velocity(v_syn: f64, omega: f64) -> Self {
        Self { g: gradient_for_velocity(v_syn, omega), omega, v_syn }
    }
}

/// g = Ω/v. Infinite for v = 0.
pub fn gradient_for_velocity(v: f64, omega: f64) -> f64 {
    omega / v
}

pub fn stm_ramp_phase(ramp: &StmRamp, xi: f64, t: f64) -> f64 {
    ramp.omega * t + ramp.g * xi
}

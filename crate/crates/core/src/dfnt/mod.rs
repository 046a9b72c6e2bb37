//! Discrete Fresnel transform: input chirp, unitary FFT, output chirp.

mod beam_map;
mod bench;
mod flops;

pub use beam_map::{beam_intensity_map, point_channel, BeamMap};
pub use bench::{bench_scaling, loglog_slope, ScalingRow};
pub use flops::{flop_estimate, FlopEstimate, PrecodingMethod};

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use std::f64::consts::PI;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{cis, normalize, ComplexVector};
use crate::manifold::Symbol4D;
use crate::physics::DerivedGeometry;

/// Unit-modulus quadratic phase exp(+jkξ_n²/(2z)) over the aperture.
#[derive(Debug, Clone, PartialEq)]
pub struct ChirpKernel {
    pub z: f64,
    pub values: ComplexVector,
}

impl ChirpKernel {
    pub fn new(z: f64, geom: &DerivedGeometry) -> Self {
        let values = (0..geom.n)
            .map(|n| {
                let xi = geom.edge_position(n);
                cis(geom.k * xi * xi / (2.0 * z))
            })
            .collect();
        Self { z, values }
    }
}

/// Signed FFT bin index in [−N/2, N/2).
#[inline]
pub(crate) fn signed_bin(p: usize, n: usize) -> f64 {
    if p < n / 2 { p as f64 } else { p as f64 - n as f64 }
}

/// Output chirp over the focal plane, x_p = p̃·λz0/D.
fn output_chirp(z: f64, geom: &DerivedGeometry) -> ComplexVector {
    let pitch = geom.lambda * geom.z0 / geom.aperture;
    (0..geom.n)
        .map(|p| {
            let x = signed_bin(p, geom.n) * pitch;
            cis(geom.k * x * x / (2.0 * z))
        })
        .collect()
}

/// F_D = Λ_out · W · Λ_in at a fixed depth, with W the unitary DFT.
#[derive(Clone)]
pub struct DfntOperator {
    z: f64,
    n: usize,
    chirp_in: ChirpKernel,
    chirp_out: ComplexVector,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
    scale: f64,
}

impl std::fmt::Debug for DfntOperator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("DfntOperator").field("z", &self.z).field("n", &self.n).finish()
    }
}

impl DfntOperator {
    pub fn new(geom: &DerivedGeometry, z: f64) -> Self {
        let mut planner = FftPlanner::new();
        Self {
            z,
            n: geom.n,
            chirp_in: ChirpKernel::new(z, geom),
            chirp_out: output_chirp(z, geom),
            forward: planner.plan_fft_forward(geom.n),
            inverse: planner.plan_fft_inverse(geom.n),
            scale: 1.0 / (geom.n as f64).sqrt(),
        }
    }

    pub fn z(&self) -> f64 {
        self.z
    }

    pub fn chirp_in(&self) -> &ChirpKernel {
        &self.chirp_in
    }

    pub fn chirp_out(&self) -> &[Complex64] {
        &self.chirp_out
    }

    fn check(&self, x: &[Complex64]) -> Result<()> {
        if x.len() != self.n {
            return Err(Error::LengthMismatch { expected: self.n, got: x.len() });
        }
        Ok(())
    }

    pub fn apply_in_place(&self, buf: &mut [Complex64]) -> Result<()> {
        self.check(buf)?;
        for (b, c) in buf.iter_mut().zip(&self.chirp_in.values) {
            *b *= c;
        }
        self.forward.process(buf);
        for (b, c) in buf.iter_mut().zip(&self.chirp_out) {
            *b *= c * self.scale;
        }
        Ok(())
    }

    pub fn apply(&self, x: &[Complex64]) -> Result<ComplexVector> {
        let mut out = x.to_vec();
        self.apply_in_place(&mut out)?;
        Ok(out)
    }

    /// F_Dᴴ: conjugate chirps around the inverse FFT.
    pub fn inverse_in_place(&self, buf: &mut [Complex64]) -> Result<()> {
        self.check(buf)?;
        for (b, c) in buf.iter_mut().zip(&self.chirp_out) {
            *b *= c.conj();
        }
        self.inverse.process(buf);
        for (b, c) in buf.iter_mut().zip(&self.chirp_in.values) {
            *b *= c.conj() * self.scale;
        }
        Ok(())
    }

    pub fn inverse(&self, x: &[Complex64]) -> Result<ComplexVector> {
        let mut out = x.to_vec();
        self.inverse_in_place(&mut out)?;
        Ok(out)
    }

    /// Focal-plane image Λ_out·W·p of an aperture phase profile `p` (no input chirp).
    pub fn focal_image(&self, p: &[Complex64]) -> Result<ComplexVector> {
        self.check(p)?;
        let mut buf = p.to_vec();
        self.forward.process(&mut buf);
        for (b, c) in buf.iter_mut().zip(&self.chirp_out) {
            *b *= c * self.scale;
        }
        Ok(buf)
    }
}

pub fn dfnt_apply(x: &[Complex64], z: f64, geom: &DerivedGeometry) -> Result<ComplexVector> {
    DfntOperator::new(geom, z).apply(x)
}

/// Joint angle–velocity steering profile p = a(θ) ⊙ b(v).
pub fn angle_velocity_profile(s: &Symbol4D, geom: &DerivedGeometry) -> ComplexVector {
    let slope = geom.k * (s.theta.sin() + s.v / geom.c_light);
    (0..geom.n).map(|n| cis(-slope * geom.edge_position(n))).collect()
}

/// Unit-norm beamforming weights for `s`: the focal-plane image of a(θ) ⊙ b(v)
/// is pulled back through F_Dᴴ at depth z, which applies the depth chirp.
pub fn precode(s: &Symbol4D, geom: &DerivedGeometry) -> ComplexVector {
    precode_with(&DfntOperator::new(geom, s.z), s, geom)
}

/// [`precode`] with a prebuilt operator at depth `s.z`.
pub fn precode_with(op: &DfntOperator, s: &Symbol4D, geom: &DerivedGeometry) -> ComplexVector {
    debug_assert!((op.z() - s.z).abs() <= 1e-12 * s.z);
    let p = angle_velocity_profile(s, geom);
    let image = op.focal_image(&p).expect("profile has N entries");
    let mut w = op.inverse(&image).expect("image has N entries");
    normalize(&mut w);
    w
}

/// O(N²) reference: Λ_out[p]·(1/√N)·Σ_n e^{−j2πpn/N}·Λ_in[n]·x[n].
pub struct DirectDfnt {
    n: usize,
    chirp_in: ComplexVector,
    chirp_out: ComplexVector,
    twiddle: ComplexVector,
}

impl DirectDfnt {
    pub fn new(geom: &DerivedGeometry, z: f64) -> Self {
        let n = geom.n;
        Self {
            n,
            chirp_in: ChirpKernel::new(z, geom).values,
            chirp_out: output_chirp(z, geom),
            twiddle: (0..n).map(|m| cis(-2.0 * PI * m as f64 / n as f64)).collect(),
        }
    }

    pub fn apply(&self, x: &[Complex64]) -> Result<ComplexVector> {
        if x.len() != self.n {
            return Err(Error::LengthMismatch { expected: self.n, got: x.len() });
        }
        let u: ComplexVector = x.iter().zip(&self.chirp_in).map(|(a, b)| a * b).collect();
        let scale = 1.0 / (self.n as f64).sqrt();
        let mask = self.n - 1;
        Ok((0..self.n)
            .map(|p| {
                let mut acc = Complex64::new(0.0, 0.0);
                let mut idx = 0usize;
                for un in &u {
                    acc += un * self.twiddle[idx];
                    idx = (idx + p) & mask;
                }
                acc * self.chirp_out[p] * scale
            })
            .collect())
    }
}

//! Velocity sweeps sharing one Monte Carlo engine: every scheme sees the same
//! channel realisation for a given (velocity, trial) pair.

use rand::Rng;
use rayon::prelude::*;

use super::{ExperimentResult, ExperimentSpec, Series};
use crate::channel::{btsm_codebook, simulate_channel, weights_series, Scheme, TrajectoryUser};
use crate::error::Result;
use crate::metrics::{coherent_gain, reference_gain, spectral_efficiency};
use crate::physics::{derive_geometry, doppler_frequency, sinc_norm, SystemConfig};
use crate::rng::stream_rng;

/// Points on every velocity sweep.
pub const SWEEP_POINTS: usize = 41;

/// Per-trial ρ for each scheme and velocity: `rho[scheme][velocity][trial]`.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrSweep {
    pub velocities: Vec<f64>,
    pub schemes: Vec<Scheme>,
    pub rho: Vec<Vec<Vec<f64>>>,
    pub g_ref: f64,
}

fn mean_std(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

impl CorrSweep {
    pub fn n_mc(&self) -> usize {
        self.rho.first().and_then(|s| s.first()).map_or(0, Vec::len)
    }

    /// Mean and sample standard deviation of `f(ρ)` over trials.
    pub fn stats(&self, scheme: usize, f: impl Fn(f64) -> f64) -> (Vec<f64>, Vec<f64>) {
        self.rho[scheme]
            .iter()
            .map(|trials| mean_std(&trials.iter().map(|&r| f(r)).collect::<Vec<_>>()))
            .unzip()
    }

    pub fn mean_rho(&self, scheme: Scheme) -> Option<Vec<f64>> {
        let i = self.schemes.iter().position(|&s| s == scheme)?;
        Some(self.stats(i, |r| r).0)
    }
}

/// The shared sweep grid: evenly spaced over [0, v_max].
pub fn sweep_velocities(v_max: f64) -> Vec<f64> {
    (0..SWEEP_POINTS).map(|i| v_max * i as f64 / (SWEEP_POINTS - 1) as f64).collect()
}

/// Monte Carlo ρ(v): `n_mc` trials per velocity with a random lateral start
/// within one focal spot and fresh phase noise.
pub fn velocity_sweep(cfg: &SystemConfig, schemes: &[Scheme], velocities: &[f64]) -> Result<CorrSweep> {
    cfg.validate()?;
    let geom = derive_geometry(cfg)?;
    let g_ref = reference_gain(cfg, &geom)?;
    let n_mc = cfg.n_mc.max(1);
    let jobs: Vec<(usize, usize)> = (0..velocities.len()).flat_map(|v| (0..n_mc).map(move |t| (v, t))).collect();
    let per_job: Vec<Vec<f64>> = jobs
        .par_iter()
        .map(|&(vi, trial)| -> Result<Vec<f64>> {
            let mut rng = stream_rng(cfg.seed, ((vi as u64) << 32) | trial as u64);
            let x0 = rng.random_range(-0.5 * geom.w_spot..=0.5 * geom.w_spot);
            let user = TrajectoryUser { x0, v: velocities[vi], z: cfg.z0 };
            let h = simulate_channel(&user, cfg, &geom, &mut rng)?;
            schemes
                .iter()
                .map(|&s| Ok(coherent_gain(&h.h, &weights_series(s, &user, cfg, &geom)?)? / g_ref))
                .collect()
        })
        .collect::<Result<_>>()?;

    let mut rho = vec![vec![Vec::with_capacity(n_mc); velocities.len()]; schemes.len()];
    for (&(vi, _), vals) in jobs.iter().zip(per_job) {
        for (s, r) in vals.into_iter().enumerate() {
            rho[s][vi].push(r);
        }
    }
    Ok(CorrSweep { velocities: velocities.to_vec(), schemes: schemes.to_vec(), rho, g_ref })
}

fn push_stats(out: &mut ExperimentResult, sweep: &CorrSweep, f: impl Fn(f64) -> f64 + Copy) {
    for (i, s) in sweep.schemes.iter().enumerate() {
        let (mean, std) = sweep.stats(i, f);
        if sweep.n_mc() > 1 {
            out.push(Series::with_std(s.name(), mean, std));
        } else {
            out.push(Series::new(s.name(), mean));
        }
    }
}

fn note_at_vmax(out: &mut ExperimentResult, unit: &str) {
    let last = out.x.len() - 1;
    let notes: Vec<(String, f64)> =
        out.series.iter().map(|s| (format!("{}_at_vmax_{unit}", s.name), s.y[last])).collect();
    for (k, v) in notes {
        out.note(&k, v);
    }
}

fn sinc_curve(cfg: &SystemConfig, velocities: &[f64]) -> Vec<f64> {
    velocities.iter().map(|&v| sinc_norm(doppler_frequency(v, cfg) * cfg.t_int).abs()).collect()
}

pub fn run_corr_sweep(spec: &ExperimentSpec) -> Result<ExperimentResult> {
    let cfg = &spec.config.system;
    let sweep = velocity_sweep(cfg, &spec.schemes, &sweep_velocities(cfg.v_max))?;
    let mut out = ExperimentResult::new("corr_sweep", &spec.config, "v_mps", sweep.velocities.clone());
    push_stats(&mut out, &sweep, |r| r);
    out.push(Series::new("sinc", sinc_curve(cfg, &sweep.velocities)));
    out.note("g_ref", sweep.g_ref);
    note_at_vmax(&mut out, "rho");
    Ok(out)
}

/// Coherent gain relative to the static reference, in dB.
pub fn abs_gain_from(spec: &ExperimentSpec, sweep: &CorrSweep) -> ExperimentResult {
    let mut out = ExperimentResult::new("abs_gain", &spec.config, "v_mps", sweep.velocities.clone());
    push_stats(&mut out, sweep, |r| 20.0 * r.log10());
    out.note("g_ref", sweep.g_ref);
    note_at_vmax(&mut out, "db");
    out
}

pub fn run_abs_gain(spec: &ExperimentSpec) -> Result<ExperimentResult> {
    let cfg = &spec.config.system;
    let sweep = velocity_sweep(cfg, &spec.schemes, &sweep_velocities(cfg.v_max))?;
    Ok(abs_gain_from(spec, &sweep))
}

pub fn spec_eff_from(spec: &ExperimentSpec, sweep: &CorrSweep) -> ExperimentResult {
    let snr = spec.config.system.snr_linear();
    let mut out = ExperimentResult::new("spec_eff", &spec.config, "v_mps", sweep.velocities.clone());
    push_stats(&mut out, sweep, |r| spectral_efficiency(r, snr));
    note_at_vmax(&mut out, "bps_hz");
    out
}

pub fn run_spec_eff(spec: &ExperimentSpec) -> Result<ExperimentResult> {
    let cfg = &spec.config.system;
    let sweep = velocity_sweep(cfg, &spec.schemes, &sweep_velocities(cfg.v_max))?;
    Ok(spec_eff_from(spec, &sweep))
}

/// BTSM ρ(v) on the sweep grid merged with the codebook bin centres.
pub fn run_btsm_quant(spec: &ExperimentSpec) -> Result<ExperimentResult> {
    let cfg = &spec.config.system;
    let b_cb = spec.config.schemes.b_cb;
    let centres = btsm_codebook(b_cb, cfg.v_max);
    let mut velocities = sweep_velocities(cfg.v_max);
    velocities.extend(&centres);
    velocities.sort_by(f64::total_cmp);
    velocities.dedup();
    let sweep = velocity_sweep(cfg, &[Scheme::Btsm { b_cb }], &velocities)?;
    let mut out = ExperimentResult::new("btsm_quant", &spec.config, "v_mps", velocities.clone());
    push_stats(&mut out, &sweep, |r| r);
    let mean = &out.series[0].y;
    let at = |v: f64| mean[velocities.iter().position(|&u| u == v).expect("velocity on grid")];
    let on_grid = sweep_velocities(cfg.v_max);
    let floor = on_grid.iter().map(|&v| at(v)).fold(f64::INFINITY, f64::min);
    let centre_min = centres.iter().map(|&v| at(v)).fold(f64::INFINITY, f64::min);
    let is_centre: Vec<f64> = velocities.iter().map(|v| f64::from(u8::from(centres.contains(v)))).collect();
    out.push(Series::new("bin_centre", is_centre));
    out.note("floor_rho", floor);
    out.note("centre_min_rho", centre_min);
    out.note("codebook_size", b_cb as f64);
    Ok(out)
}

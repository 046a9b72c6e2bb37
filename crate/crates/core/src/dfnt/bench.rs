//! Wall-clock scaling of the fast and direct transforms.

use num_complex::Complex64;
use serde::Serialize;
use std::hint::black_box;
use std::time::{Duration, Instant};

use super::{flop_estimate, DfntOperator, DirectDfnt, PrecodingMethod};
use crate::error::{Error, Result};
use crate::physics::{derive_geometry, SystemConfig};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScalingRow {
    pub n: usize,
    pub flops_model: f64,
    pub t_dfnt_ns: f64,
    pub t_direct_ns: f64,
}

/// Best-of-`reps` time per call, looping each rep for at least `min_time`.
fn time_per_call(reps: usize, min_time: Duration, mut f: impl FnMut()) -> f64 {
    let start = Instant::now();
    f();
    let once = start.elapsed().max(Duration::from_nanos(50));
    let iters = ((min_time.as_secs_f64() / once.as_secs_f64()).ceil() as usize).max(1);
    (0..reps.max(1))
        .map(|_| {
            let t = Instant::now();
            for _ in 0..iters {
                f();
            }
            t.elapsed().as_secs_f64() * 1e9 / iters as f64
        })
        .fold(f64::INFINITY, f64::min)
}

pub fn bench_scaling(sizes: &[usize], reps: usize, base: &SystemConfig) -> Result<Vec<ScalingRow>> {
    let mut rows = Vec::with_capacity(sizes.len());
    for &n in sizes {
        if !n.is_power_of_two() {
            return Err(Error::InvalidConfig(format!("size {n} is not a power of two")));
        }
        let geom = derive_geometry(&SystemConfig { n, ..base.clone() })?;
        let x: Vec<Complex64> = (0..n).map(|i| Complex64::new((i as f64).cos(), (0.5 * i as f64).sin())).collect();
        let op = DfntOperator::new(&geom, geom.z0);
        let direct = DirectDfnt::new(&geom, geom.z0);
        let mut buf = x.clone();
        let t_dfnt_ns = time_per_call(reps, Duration::from_millis(20), || {
            buf.copy_from_slice(&x);
            op.apply_in_place(black_box(&mut buf)).unwrap();
        });
        let t_direct_ns = time_per_call(reps, Duration::from_millis(20), || {
            black_box(direct.apply(black_box(&x)).unwrap());
        });
        let flops_model = flop_estimate(PrecodingMethod::Dfnt, n, 1, 1.0, 1.0)?.flops;
        rows.push(ScalingRow { n, flops_model, t_dfnt_ns, t_direct_ns });
    }
    Ok(rows)
}

/// Least-squares slope of log y against log x.
pub fn loglog_slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = lx.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}

use super::{ExperimentResult, ExperimentSpec, Series};
use crate::channel::{nf_doppler_profile, nf_element_doppler, nf_doppler_deviation};
use crate::detector::ser_monte_carlo;
use crate::dfnt::{beam_intensity_map, bench_scaling, flop_estimate, loglog_slope, precode, PrecodingMethod};
use crate::error::{Error, Result};
use crate::manifold::{build_grid, Symbol4D};
use crate::metrics::{peak_sum_rate, sum_rate, CapacityModel, CapacityScheme};
use crate::physics::{derive_geometry, SystemConfig};
use crate::rng::stream_rng;

/// Element Doppler deviation from the carrier Doppler across the aperture at v_max.
pub fn run_nf_spread(spec: &ExperimentSpec) -> Result<ExperimentResult> {
    let cfg = &spec.config.system;
    let geom = derive_geometry(cfg)?;
    let v = cfg.v_max;
    let mut out = ExperimentResult::new("nf_spread", &spec.config, "xi_m", geom.xi.clone());
    out.push(Series::new("deviation_hz", nf_doppler_profile(v, &geom)));
    let edge = 0.5 * geom.aperture;
    out.note("centre_deviation_hz", nf_doppler_deviation(0.0, v, &geom));
    out.note("edge_deviation_hz", nf_doppler_deviation(edge, v, &geom));
    out.note("edge_true_doppler_hz", nf_element_doppler(edge, v, &geom));
    Ok(out)
}

/// Sum rate against K for each static scheme, and FSM over C ∈ {1, 2, 4, 8}
/// with the angle and depth counts held fixed.
pub fn run_capacity(spec: &ExperimentSpec) -> Result<ExperimentResult> {
    let g = &spec.config.grid;
    let snr = spec.config.system.snr_linear();
    let (a, b, c) = (g.a, g.b, g.c);
    let c_sweep = [1usize, 2, 4, 8];
    let k_top = 2 * (a * b * c).max(a * b * c_sweep[3]);
    let ks: Vec<usize> = (1..=k_top).collect();
    let mut out = ExperimentResult::new("capacity", &spec.config, "k", ks.iter().map(|&k| k as f64).collect());
    let curve = |m: &CapacityModel| ks.iter().map(|&k| sum_rate(k, m)).collect::<Vec<f64>>();
    for s in [CapacityScheme::Ldma, CapacityScheme::Ttd, CapacityScheme::Fsm] {
        let m = CapacityModel::new(s, a, b, c, snr);
        let y = curve(&m);
        let peak = y.iter().copied().fold(0.0, f64::max);
        out.note(&format!("{}_k_max", s.name()), m.k_max as f64);
        out.note(&format!("{}_peak", s.name()), peak);
        if let Some(&v) = y.get(49) {
            out.note(&format!("{}_k50", s.name()), v);
        }
        out.push(Series::new(s.name(), y));
    }
    for cc in c_sweep {
        let m = CapacityModel::new(CapacityScheme::Fsm, a, b, cc, snr);
        out.note(&format!("fsm_c{cc}_k_max"), m.k_max as f64);
        out.note(&format!("fsm_c{cc}_peak"), peak_sum_rate(a, b, cc, snr));
        out.push(Series::new(format!("fsm_c{cc}"), curve(&m)));
    }
    Ok(out)
}

/// Measured transform scaling with the modelled FLOP count alongside.
pub fn run_dfnt_bench(spec: &ExperimentSpec) -> Result<ExperimentResult> {
    let cfg = &spec.config.system;
    let e = &spec.extra;
    let rows = bench_scaling(&e.bench_sizes, e.bench_reps, cfg)?;
    let ns: Vec<f64> = rows.iter().map(|r| r.n as f64).collect();
    let mut out = ExperimentResult::new("dfnt_bench", &spec.config, "N", ns.clone());
    let dfnt: Vec<f64> = rows.iter().map(|r| r.t_dfnt_ns).collect();
    let direct: Vec<f64> = rows.iter().map(|r| r.t_direct_ns).collect();
    out.push(Series::new("flops_model", rows.iter().map(|r| r.flops_model).collect()));
    out.push(Series::new("t_dfnt_ns", dfnt.clone()));
    out.push(Series::new("t_direct_ns", direct.clone()));
    if ns.len() >= 2 {
        out.note("slope_dfnt", loglog_slope(&ns, &dfnt));
        out.note("slope_direct", loglog_slope(&ns, &direct));
    }
    let geom = derive_geometry(cfg)?;
    for m in PrecodingMethod::ALL {
        let est = flop_estimate(m, cfg.n, e.users_k, e.flops_rate, geom.t_c)?;
        out.note(&format!("{}_flops", m.name()), est.flops);
        out.note(&format!("{}_seconds", m.name()), est.seconds);
        out.note(&format!("{}_ratio_vs_tc", m.name()), est.ratio_vs_tc);
    }
    Ok(out)
}

/// Symbol and bit error rates of the matched-filter detector against SNR.
pub fn run_detect(spec: &ExperimentSpec) -> Result<ExperimentResult> {
    let cfg = &spec.config.system;
    let e = &spec.extra;
    if e.snr_sweep_db.is_empty() || e.n_symbols == 0 {
        return Err(Error::InvalidConfig("detect needs at least one SNR point and one symbol".into()));
    }
    let geom = derive_geometry(cfg)?;
    let grid = build_grid(&geom, &spec.config.grid)?;
    let mut out = ExperimentResult::new("detect", &spec.config, "snr_db", e.snr_sweep_db.clone());
    let (mut ser, mut ber) = (Vec::new(), Vec::new());
    for (i, &snr_db) in e.snr_sweep_db.iter().enumerate() {
        let point = SystemConfig { snr_db, ..cfg.clone() };
        let r = ser_monte_carlo(&grid, &point, &geom, e.n_symbols, &mut stream_rng(cfg.seed, i as u64));
        ser.push(r.ser);
        ber.push(r.ber);
    }
    out.push(Series::new("ser", ser));
    out.push(Series::new("ber", ber));
    out.note("bits_per_symbol", grid.bits_per_symbol as f64);
    out.note("n_symbols", e.n_symbols as f64);
    Ok(out)
}

/// Lateral and depth span of the beam map: ±10 resolution cells around the focus.
pub fn beam_axes(theta: f64, cfg: &SystemConfig, points: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let geom = derive_geometry(cfg)?;
    if points < 2 {
        return Err(Error::InvalidConfig("beam map needs at least 2 points per axis".into()));
    }
    let lin = |c: f64, half: f64| -> Vec<f64> {
        (0..points).map(|i| c - half + 2.0 * half * i as f64 / (points - 1) as f64).collect()
    };
    let xs = lin(cfg.z0 * theta.sin(), 10.0 * geom.dx_rayleigh);
    let half_z = (10.0 * geom.dz_fresnel).min(0.5 * cfg.z0);
    Ok((xs, lin(cfg.z0, half_z)))
}

/// Focal intensity of symbols steered to the same (θ, z) with two velocities;
/// long format, one row per map point.
pub fn run_beam_map(spec: &ExperimentSpec) -> Result<ExperimentResult> {
    let cfg = &spec.config.system;
    let e = &spec.extra;
    let geom = derive_geometry(cfg)?;
    let (xs, zs) = beam_axes(e.beam_theta, cfg, e.beam_points)?;
    let (v1, v2) = e.beam_velocities;
    let map = |v: f64| beam_intensity_map(&precode(&Symbol4D::at(e.beam_theta, cfg.z0, v), &geom), &xs, &zs, &geom);
    let (a, b) = (map(v1), map(v2));
    let flat_x: Vec<f64> = zs.iter().flat_map(|_| xs.iter().copied()).collect();
    let flat_z: Vec<f64> = zs.iter().flat_map(|&z| xs.iter().map(move |_| z)).collect();
    let ia: Vec<f64> = a.intensity.iter().flatten().copied().collect();
    let ib: Vec<f64> = b.intensity.iter().flatten().copied().collect();
    let diff: Vec<f64> = ia.iter().zip(&ib).map(|(p, q)| (p - q).abs()).collect();
    let max_diff = diff.iter().copied().fold(0.0, f64::max);
    let mut out = ExperimentResult::new("beam_map", &spec.config, "x_m", flat_x);
    out.push(Series::new("z_m", flat_z));
    out.push(Series::new(format!("v{v1}"), ia));
    out.push(Series::new(format!("v{v2}"), ib));
    out.push(Series::new("abs_diff", diff));
    out.note("max_abs_diff", max_diff);
    let (iz, ix) = a.argmax();
    out.note("peak_x_m", xs[ix]);
    out.note("peak_z_m", zs[iz]);
    Ok(out)
}

use criterion::{criterion_group, criterion_main, Criterion};
use num_complex::Complex64;
use std::hint::black_box;

use fstm_bench::geometry;
use fstm_core::channel::{simulate_channel, weights_series, Scheme, TrajectoryUser};
use fstm_core::detector::MatchedFilterBank;
use fstm_core::dfnt::{precode_with, DfntOperator};
use fstm_core::manifold::{build_grid, GridParams};
use fstm_core::metrics::coherent_gain;
use fstm_core::physics::SystemConfig;
use fstm_core::rng::stream_rng;

fn symbol_path(c: &mut Criterion) {
    let (_, geom) = geometry(4096);
    let grid = build_grid(&geom, &GridParams::default()).unwrap();
    let idx = grid.index_of_word(0b10_0111_0110);
    let s = grid.symbol(idx);
    let op = DfntOperator::new(&geom, s.z);
    c.bench_function("precode_4096", |b| b.iter(|| precode_with(&op, black_box(&s), &geom)));

    let bank = MatchedFilterBank::new(&grid, &geom);
    let y: Vec<Complex64> = precode_with(&op, &s, &geom).iter().map(|w| w * s.qam_value).collect();
    c.bench_function("matched_filter_detect_4096_x64", |b| b.iter(|| bank.detect(black_box(&y)).unwrap()));
}

fn channel_path(c: &mut Criterion) {
    let cfg = SystemConfig::desk();
    let (_, geom) = geometry(cfg.n);
    let user = TrajectoryUser { x0: 0.004, v: 200.0, z: cfg.z0 };
    let mut group = c.benchmark_group("channel_1024x1024");
    group.sample_size(10);
    group.bench_function("simulate", |b| {
        b.iter(|| simulate_channel(black_box(&user), &cfg, &geom, &mut stream_rng(1, 0)).unwrap())
    });
    let h = simulate_channel(&user, &cfg, &geom, &mut stream_rng(1, 0)).unwrap();
    group.bench_function("fsm_weights_and_gain", |b| {
        b.iter(|| {
            let w = weights_series(Scheme::Fsm, black_box(&user), &cfg, &geom).unwrap();
            coherent_gain(&h.h, &w).unwrap()
        })
    });
    group.finish();
}

criterion_group!(benches, symbol_path, channel_path);
criterion_main!(benches);

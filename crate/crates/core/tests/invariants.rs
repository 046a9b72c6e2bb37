//! Detector-level statistical properties on the default grid.

use num_complex::Complex64;
use proptest::prelude::*;

use fstm_core::detector::{ser_monte_carlo, MatchedFilterBank};
use fstm_core::dfnt::precode;
use fstm_core::manifold::{build_grid, GridParams, ManifoldGrid};
use fstm_core::physics::{derive_geometry, DerivedGeometry, SystemConfig};
use fstm_core::rng::stream_rng;

fn desk() -> (SystemConfig, DerivedGeometry, ManifoldGrid) {
    let cfg = SystemConfig::desk();
    let geom = derive_geometry(&cfg).unwrap();
    let grid = build_grid(&geom, &GridParams::default()).unwrap();
    (cfg, geom, grid)
}

/// Gray labelling along every axis should keep the average bit cost of a
/// symbol error at two bits or fewer once SNR is moderate.
#[test]
fn gray_penalty_at_moderate_snr() {
    let (cfg, geom, grid) = desk();
    for snr_db in [10.0, 15.0] {
        let r = ser_monte_carlo(&grid, &SystemConfig { snr_db, ..cfg.clone() }, &geom, 4000, &mut stream_rng(cfg.seed, 77));
        assert!(r.symbol_errors > 50, "too few errors at {snr_db} dB to measure");
        let per_error = r.bit_errors as f64 / r.symbol_errors as f64;
        assert!(per_error <= 2.0, "{per_error:.3} bit errors per symbol error at {snr_db} dB");
    }
}

#[test]
fn bit_errors_bounded_by_symbol_errors() {
    let (cfg, geom, grid) = desk();
    let m = grid.bits_per_symbol as f64;
    for (i, snr_db) in [0.0, 8.0, 16.0].into_iter().enumerate() {
        let r = ser_monte_carlo(&grid, &SystemConfig { snr_db, ..cfg.clone() }, &geom, 1000, &mut stream_rng(3, i as u64));
        assert!(r.bit_errors as f64 <= r.symbol_errors as f64 * m);
        assert!(r.ber <= r.ser * m);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn detection_ignores_global_phase(word in 0u64..1024, phase in -3.2f64..3.2) {
        let (_, geom, grid) = desk();
        let bank = MatchedFilterBank::new(&grid, &geom);
        let s = grid.symbol(grid.index_of_word(word));
        let y: Vec<Complex64> = precode(&s, &geom).iter().map(|x| x * s.qam_value).collect();
        let rot: Vec<Complex64> = y.iter().map(|x| x * Complex64::from_polar(1.0, phase)).collect();
        let (a, b) = (bank.detect(&y).unwrap(), bank.detect(&rot).unwrap());
        // The spatial decision is phase blind; the QAM decision rotates with y.
        prop_assert_eq!((a.index.angle, a.index.depth, a.index.velocity), (b.index.angle, b.index.depth, b.index.velocity));
        prop_assert!((a.metric - b.metric).abs() <= 1e-9 * a.metric);
    }
}

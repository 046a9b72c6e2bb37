use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, Normal};
use serde::Serialize;

use super::MatchedFilterBank;
use crate::dfnt::{precode_with, DfntOperator};
use crate::linalg::ComplexVector;
use crate::manifold::ManifoldGrid;
use crate::physics::{DerivedGeometry, SystemConfig};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SerResult {
    pub ser: f64,
    pub ber: f64,
    pub symbol_errors: usize,
    pub bit_errors: usize,
    pub n_symbols: usize,
}

/// Static (v = 0 link) detection benchmark: random words are precoded, observed
/// across the array in complex Gaussian noise of per-element variance 1/SNR,
/// and detected by the matched-filter bank.
pub fn ser_monte_carlo<R: Rng + ?Sized>(
    grid: &ManifoldGrid,
    cfg: &SystemConfig,
    geom: &DerivedGeometry,
    n_symbols: usize,
    rng: &mut R,
) -> SerResult {
    assert!(n_symbols >= 1);
    let bank = MatchedFilterBank::new(grid, geom);
    let ops: Vec<DfntOperator> = grid.depths.iter().map(|&z| DfntOperator::new(geom, z)).collect();
    let waveforms: Vec<ComplexVector> = bank
        .indices()
        .iter()
        .map(|i| precode_with(&ops[i.depth], &grid.symbol(*i), geom))
        .collect();
    let snr = cfg.snr_linear();
    let sigma = if snr.is_finite() { (0.5 / snr).sqrt() } else { 0.0 };
    let noise = Normal::new(0.0, sigma).expect("finite noise level");
    let m = grid.bits_per_symbol;
    let spatial = |w: u64| {
        let i = grid.index_of_word(w);
        (i.angle * grid.depths.len() + i.depth) * grid.velocities.len() + i.velocity
    };

    let mut y = vec![Complex64::new(0.0, 0.0); geom.n];
    let (mut symbol_errors, mut bit_errors) = (0, 0);
    for _ in 0..n_symbols {
        let word = rng.random::<u64>() & ((1u64 << m) - 1);
        let d = grid.qam.point(grid.index_of_word(word).qam);
        for (yn, wn) in y.iter_mut().zip(&waveforms[spatial(word)]) {
            *yn = wn * d;
            if sigma > 0.0 {
                *yn += Complex64::new(noise.sample(rng), noise.sample(rng));
            }
        }
        let got = bank.detect(&y).expect("length N").bits_hat;
        if got != word {
            symbol_errors += 1;
            bit_errors += (got ^ word).count_ones() as usize;
        }
    }
    SerResult {
        ser: symbol_errors as f64 / n_symbols as f64,
        ber: bit_errors as f64 / (n_symbols as f64 * m as f64),
        symbol_errors,
        bit_errors,
        n_symbols,
    }
}

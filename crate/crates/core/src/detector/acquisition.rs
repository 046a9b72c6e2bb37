//! Coarse-to-fine pilot search over the spatial-kinematic grid.

use serde::Serialize;
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::manifold::{GridIndex, ManifoldGrid, StmRamp, Symbol4D};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Acquisition {
    pub theta_hat: f64,
    pub z_hat: f64,
    pub v_hat: f64,
    pub index: GridIndex,
    /// STM ramp initialised at the acquired velocity; `None` when v̂ = 0.
    pub ramp: Option<StmRamp>,
    pub coarse_probes: usize,
    pub fine_probes: usize,
}

/// Coarse stage over 2×2×2 blocks, then the 3×3×3 neighbourhood of the
/// winning block. A coarse probe is an ideal wide beam whose power is the sum
/// of the point powers it covers; point sampling alone fails on orthogonal
/// grids, where a pilot is exactly nulled at its velocity neighbours.
/// `probe` returns the pilot power at a grid point, or `None` if unobserved.
pub fn acquire_with(
    grid: &ManifoldGrid,
    omega: f64,
    mut probe: impl FnMut(GridIndex) -> Option<f64>,
) -> Result<Acquisition> {
    let dims = [grid.thetas.len(), grid.depths.len(), grid.velocities.len()];
    let idx = |a, b, c| GridIndex { angle: a, depth: b, velocity: c, qam: 0 };
    let block = |x: usize, n: usize| x..(x + 2).min(n);

    let mut coarse_probes = 0;
    let mut anchor: Option<(GridIndex, f64)> = None;
    for a in (0..dims[0]).step_by(2) {
        for b in (0..dims[1]).step_by(2) {
            for c in (0..dims[2]).step_by(2) {
                let mut power = None;
                for ia in block(a, dims[0]) {
                    for ib in block(b, dims[1]) {
                        for ic in block(c, dims[2]) {
                            if let Some(p) = probe(idx(ia, ib, ic)) {
                                *power.get_or_insert(0.0) += p;
                            }
                        }
                    }
                }
                if let Some(p) = power {
                    coarse_probes += 1;
                    if anchor.is_none_or(|(_, bp)| p > bp) {
                        anchor = Some((idx(a, b, c), p));
                    }
                }
            }
        }
    }
    let (centre, _) = anchor.ok_or(Error::EmptyObservations)?;

    let around = |x: usize, n: usize| x.saturating_sub(1)..=(x + 1).min(n - 1);
    let mut fine_probes = 0;
    let mut best: Option<(GridIndex, f64)> = None;
    for a in around(centre.angle, dims[0]) {
        for b in around(centre.depth, dims[1]) {
            for c in around(centre.velocity, dims[2]) {
                if let Some(p) = probe(idx(a, b, c)) {
                    fine_probes += 1;
                    if best.is_none_or(|(_, bp)| p > bp) {
                        best = Some((idx(a, b, c), p));
                    }
                }
            }
        }
    }
    let (index, _) = best.ok_or(Error::EmptyObservations)?;
    let s = grid.symbol(index);
    Ok(Acquisition {
        theta_hat: s.theta,
        z_hat: s.z,
        v_hat: s.v,
        index,
        ramp: (s.v != 0.0).then(|| StmRamp::for_velocity(s.v, omega)),
        coarse_probes,
        fine_probes,
    })
}

/// [`acquire_with`] over a list of (probe point, pilot power) observations.
pub fn acquire(observations: &[(Symbol4D, f64)], grid: &ManifoldGrid, omega: f64) -> Result<Acquisition> {
    if observations.is_empty() {
        return Err(Error::EmptyObservations);
    }
    let table: HashMap<(usize, usize, usize), f64> = observations
        .iter()
        .map(|(s, p)| {
            let i = grid.index_of(s);
            ((i.angle, i.depth, i.velocity), *p)
        })
        .collect();
    acquire_with(grid, omega, |i| table.get(&(i.angle, i.depth, i.velocity)).copied())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifold::{build_grid, manifold_correlation, GridParams};
    use crate::physics::{derive_geometry, DerivedGeometry, SystemConfig};
    use std::f64::consts::PI;

    const OMEGA: f64 = 2.0 * PI * 10e3;

    fn setup(p: GridParams) -> (DerivedGeometry, ManifoldGrid) {
        let geom = derive_geometry(&SystemConfig::default()).unwrap();
        let grid = build_grid(&geom, &p).unwrap();
        (geom, grid)
    }

    fn responses(grid: &ManifoldGrid, geom: &DerivedGeometry, pilot: &Symbol4D) -> Vec<(Symbol4D, f64)> {
        grid.spatial_indices()
            .map(|i| {
                let s = grid.symbol(i);
                (s, manifold_correlation(&s, pilot, geom).norm_sqr())
            })
            .collect()
    }

    #[test]
    fn on_grid_pilots_are_found() {
        let (geom, grid) = setup(GridParams::default());
        for i in grid.spatial_indices() {
            let obs = responses(&grid, &geom, &grid.symbol(i));
            let acq = acquire(&obs, &grid, OMEGA).unwrap();
            assert_eq!(acq.index, i);
            assert!(acq.coarse_probes <= grid.spatial_len() / 8);
            assert!(acq.fine_probes <= 27);
            if acq.v_hat != 0.0 {
                assert!((acq.ramp.unwrap().g - OMEGA / acq.v_hat).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn off_grid_velocity_snaps_to_a_neighbour() {
        let (geom, grid) = setup(GridParams { b: 1, c: 8, ..Default::default() });
        for l in 0..grid.velocities.len() - 1 {
            let v = 0.5 * (grid.velocities[l] + grid.velocities[l + 1]);
            let pilot = Symbol4D::at(grid.thetas[1], grid.depths[0], v);
            let obs = responses(&grid, &geom, &pilot);
            let exhaustive = obs.iter().max_by(|a, b| a.1.total_cmp(&b.1)).unwrap().0;
            let acq = acquire(&obs, &grid, OMEGA).unwrap();
            assert!(acq.index.velocity == l || acq.index.velocity == l + 1);
            assert!(grid.index_of(&exhaustive).velocity == l || grid.index_of(&exhaustive).velocity == l + 1);
            assert_eq!(acq.index.angle, 1);
        }
    }

    #[test]
    fn empty_observations() {
        let (_, grid) = setup(GridParams::default());
        assert_eq!(acquire(&[], &grid, OMEGA), Err(Error::EmptyObservations));
    }
}

use serde::{Deserialize, Serialize};

use super::gray::{gray_decode, gray_encode};
use super::null_surface::{kappa_exact, depth_null_spacing, velocity_null_spacing};
use super::qam::Constellation;
use super::Symbol4D;
use crate::error::{Error, Result};
use crate::physics::DerivedGeometry;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GridMode {
    /// Velocities evenly spread over [0, v_max].
    Uniform,
    /// Velocities on pure-velocity null points, spaced so depth chirps cannot alias.
    Orthogonal,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridParams {
    #[serde(rename = "A")]
    pub a: usize,
    #[serde(rename = "B")]
    pub b: usize,
    #[serde(rename = "C")]
    pub c: usize,
    pub qam_order: usize,
    /// Half field of view [deg].
    pub fov_deg: f64,
    pub mode: GridMode,
    /// Upper end of the uniform-mode velocity range [m/s].
    pub v_max: f64,
}

impl Default for GridParams {
    fn default() -> Self {
        Self { a: 4, b: 4, c: 4, qam_order: 16, fov_deg: 30.0, mode: GridMode::Orthogonal, v_max: 200.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GridIndex {
    pub angle: usize,
    pub depth: usize,
    pub velocity: usize,
    pub qam: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ManifoldGrid {
    pub thetas: Vec<f64>,
    pub depths: Vec<f64>,
    pub velocities: Vec<f64>,
    pub qam: Constellation,
    pub bits_per_symbol: u32,
    pub mode: GridMode,
    /// Pure-velocity null orders between neighbouring velocities (orthogonal mode).
    pub velocity_stride: u32,
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![0.5 * (lo + hi)];
    }
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

pub fn build_grid(geom: &DerivedGeometry, p: &GridParams) -> Result<ManifoldGrid> {
    for (name, v) in [("A", p.a), ("B", p.b), ("C", p.c), ("qam_order", p.qam_order)] {
        if v == 0 || !v.is_power_of_two() {
            return Err(Error::InvalidConfig(format!("{name} must be a power of two")));
        }
    }
    if p.a * p.b * p.c * p.qam_order < 2 {
        return Err(Error::InvalidConfig("grid must carry at least one bit".into()));
    }
    if !(p.fov_deg > 0.0 && p.fov_deg < 90.0) {
        return Err(Error::InvalidConfig("fov_deg must lie in (0, 90)".into()));
    }
    let fov = p.fov_deg.to_radians();
    let thetas = if p.a == 1 { vec![0.0] } else { linspace(-fov, fov, p.a) };

    let dz = depth_null_spacing(1, geom);
    let depths: Vec<f64> = (0..p.b).map(|j| geom.z0 + j as f64 * dz).collect();
    let limit = geom.fresnel_limit();
    if let Some(&z) = depths.iter().find(|&&z| !(z > 0.0 && z < limit)) {
        return Err(Error::OutsideFresnel { z, limit });
    }

    let (velocities, velocity_stride) = match p.mode {
        GridMode::Uniform => {
            let v = if p.c == 1 { vec![0.0] } else { linspace(0.0, p.v_max, p.c) };
            (v, 0)
        }
        GridMode::Orthogonal => {
            // A depth offset adds a chirp whose instantaneous frequency sweeps
            // kκD²/π velocity bins across the aperture; neighbouring velocities
            // sit at least that many nulls apart.
            let span = kappa_exact(depths[0], depths[p.b - 1]).abs();
            let bins = geom.k * span * geom.aperture * geom.aperture / std::f64::consts::PI;
            let stride = ((bins - 1e-9).ceil() as u32).max(1);
            let dv = velocity_null_spacing(stride, geom);
            ((0..p.c).map(|l| l as f64 * dv).collect(), stride)
        }
    };

    let qam = Constellation::new(p.qam_order);
    let bits_per_symbol = (p.a * p.b * p.c * p.qam_order).trailing_zeros();
    Ok(ManifoldGrid { thetas, depths, velocities, qam, bits_per_symbol, mode: p.mode, velocity_stride })
}

fn field_bits(n: usize) -> u32 {
    n.trailing_zeros()
}

impl ManifoldGrid {
    /// Number of spatial-kinematic points A·B·C.
    pub fn spatial_len(&self) -> usize {
        self.thetas.len() * self.depths.len() * self.velocities.len()
    }

    pub fn symbol(&self, idx: GridIndex) -> Symbol4D {
        Symbol4D {
            theta: self.thetas[idx.angle],
            z: self.depths[idx.depth],
            v: self.velocities[idx.velocity],
            qam_index: idx.qam,
            qam_value: self.qam.point(idx.qam),
        }
    }

    /// All spatial-kinematic indices, angle-major.
    pub fn spatial_indices(&self) -> impl Iterator<Item = GridIndex> + '_ {
        let (nb, nc) = (self.depths.len(), self.velocities.len());
        (0..self.spatial_len()).map(move |i| GridIndex {
            angle: i / (nb * nc),
            depth: (i / nc) % nb,
            velocity: i % nc,
            qam: 0,
        })
    }

    fn field_widths(&self) -> [u32; 4] {
        [
            field_bits(self.thetas.len()),
            field_bits(self.depths.len()),
            field_bits(self.velocities.len()),
            self.qam.bits(),
        ]
    }

    /// Grid index of an M-bit word (MSB first: angle, depth, velocity, QAM).
    pub fn index_of_word(&self, word: u64) -> GridIndex {
        let [wa, wb, wc, wq] = self.field_widths();
        let mask = |w: u32| (1u64 << w) - 1;
        let q = word & mask(wq);
        let v = (word >> wq) & mask(wc);
        let z = (word >> (wq + wc)) & mask(wb);
        let a = (word >> (wq + wc + wb)) & mask(wa);
        GridIndex {
            angle: gray_decode(a) as usize,
            depth: gray_decode(z) as usize,
            velocity: gray_decode(v) as usize,
            qam: self.qam.index_of_label(q),
        }
    }

    pub fn word_of_index(&self, idx: GridIndex) -> u64 {
        let [_, wb, wc, wq] = self.field_widths();
        let mut w = gray_encode(idx.angle as u64);
        w = (w << wb) | gray_encode(idx.depth as u64);
        w = (w << wc) | gray_encode(idx.velocity as u64);
        (w << wq) | self.qam.label_of_index(idx.qam)
    }

    pub fn encode_word(&self, word: u64) -> Symbol4D {
        self.symbol(self.index_of_word(word))
    }

    /// Nearest grid index to each coordinate of `s`.
    pub fn index_of(&self, s: &Symbol4D) -> GridIndex {
        let nearest = |set: &[f64], x: f64| {
            set.iter()
                .enumerate()
                .min_by(|a, b| (a.1 - x).abs().total_cmp(&(b.1 - x).abs()))
                .map(|(i, _)| i)
                .unwrap_or(0)
        };
        GridIndex {
            angle: nearest(&self.thetas, s.theta),
            depth: nearest(&self.depths, s.z),
            velocity: nearest(&self.velocities, s.v),
            qam: s.qam_index,
        }
    }

    pub fn decode_word(&self, s: &Symbol4D) -> u64 {
        self.word_of_index(self.index_of(s))
    }
}

/// Map an MSB-first bit slice to a manifold symbol.
pub fn encode_bits(bits: &[bool], grid: &ManifoldGrid) -> Result<Symbol4D> {
    if bits.len() != grid.bits_per_symbol as usize {
        return Err(Error::WidthMismatch { expected: grid.bits_per_symbol, got: bits.len() as u32 });
    }
    let word = bits.iter().fold(0u64, |w, &b| (w << 1) | b as u64);
    Ok(grid.encode_word(word))
}

/// Inverse of [`encode_bits`].
pub fn decode_symbol(s: &Symbol4D, grid: &ManifoldGrid) -> Vec<bool> {
    word_to_bits(grid.decode_word(s), grid.bits_per_symbol)
}

pub fn word_to_bits(word: u64, width: u32) -> Vec<bool> {
    (0..width).rev().map(|i| (word >> i) & 1 == 1).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifold::manifold_correlation;
    use crate::physics::{derive_geometry, SystemConfig};

    fn geom() -> DerivedGeometry {
        derive_geometry(&SystemConfig::default()).unwrap()
    }

    fn grid(a: usize, b: usize, c: usize, q: usize) -> ManifoldGrid {
        build_grid(&geom(), &GridParams { a, b, c, qam_order: q, ..Default::default() }).unwrap()
    }

    #[test]
    fn bits_per_symbol() {
        assert_eq!(grid(4, 4, 4, 16).bits_per_symbol, 10);
        assert_eq!(grid(1, 1, 1, 2).bits_per_symbol, 1);
    }

    #[test]
    fn default_depths() {
        let g = grid(4, 4, 4, 16);
        let want = [30.0, 30.4, 30.8, 31.2];
        for (z, w) in g.depths.iter().zip(want) {
            assert!((z - w).abs() < 0.01, "{z}");
        }
    }

    #[test]
    fn rejects_bad_cardinalities() {
        let g = geom();
        for p in [
            GridParams { a: 3, ..Default::default() },
            GridParams { qam_order: 0, ..Default::default() },
            GridParams { a: 1, b: 1, c: 1, qam_order: 1, ..Default::default() },
        ] {
            assert!(build_grid(&g, &p).is_err());
        }
    }

    #[test]
    fn small_arrays_leave_the_fresnel_region() {
        let g = derive_geometry(&SystemConfig { n: 4, ..Default::default() }).unwrap();
        assert!(matches!(build_grid(&g, &GridParams::default()), Err(Error::OutsideFresnel { .. })));
    }

    #[test]
    fn all_zero_word() {
        let g = grid(4, 4, 4, 16);
        let s = encode_bits(&[false; 10], &g).unwrap();
        assert_eq!(s.theta, g.thetas[0]);
        assert_eq!(s.z, g.depths[0]);
        assert_eq!(s.v, g.velocities[0]);
        assert_eq!(s.qam_value, g.qam.point(0));
        assert!(encode_bits(&[false; 9], &g).is_err());
    }

    #[test]
    fn exhaustive_roundtrip() {
        let g = grid(4, 4, 4, 16);
        for w in 0..1u64 << 10 {
            let bits = word_to_bits(w, 10);
            let s = encode_bits(&bits, &g).unwrap();
            assert_eq!(decode_symbol(&s, &g), bits);
        }
    }

    #[test]
    fn one_bit_flip_moves_one_coordinate() {
        let g = grid(4, 4, 4, 16);
        for w in 0..1u64 << 10 {
            let i0 = g.index_of_word(w);
            for b in 0..10 {
                let i1 = g.index_of_word(w ^ (1 << b));
                let changed = [i0.angle != i1.angle, i0.depth != i1.depth, i0.velocity != i1.velocity, i0.qam != i1.qam];
                assert_eq!(changed.iter().filter(|c| **c).count(), 1);
            }
        }
    }

    #[test]
    fn adjacent_indices_differ_in_one_bit() {
        let g = grid(4, 4, 8, 16);
        for idx in g.spatial_indices() {
            if idx.velocity + 1 < g.velocities.len() {
                let next = GridIndex { velocity: idx.velocity + 1, ..idx };
                assert_eq!((g.word_of_index(idx) ^ g.word_of_index(next)).count_ones(), 1);
            }
        }
    }

    #[test]
    fn orthogonal_velocities_sit_on_exact_nulls() {
        let ge = geom();
        let g = grid(4, 4, 4, 16);
        assert_eq!(g.velocity_stride, 12);
        for &z in &g.depths {
            for w in g.velocities.windows(2) {
                let c = manifold_correlation(&Symbol4D::at(0.1, z, w[0]), &Symbol4D::at(0.1, z, w[1]), &ge);
                assert!(c.norm() < 1e-9);
            }
        }
        assert_eq!(grid(4, 1, 4, 16).velocity_stride, 1);
    }

    #[test]
    fn adjacent_depths_below_calibrated_threshold() {
        // The densely swept depth minimum is 0.2152; adjacent grid depths sit
        // slightly off it, at 0.2192.
        let ge = geom();
        let g = grid(4, 4, 4, 16);
        for w in g.depths.windows(2) {
            let c = manifold_correlation(&Symbol4D::at(0.0, w[0], 0.0), &Symbol4D::at(0.0, w[1], 0.0), &ge);
            assert!(c.norm() < 0.225, "{}", c.norm());
        }
    }

    #[test]
    fn uniform_mode_velocities() {
        let g = build_grid(&geom(), &GridParams { mode: GridMode::Uniform, ..Default::default() }).unwrap();
        assert_eq!(g.velocities.first(), Some(&0.0));
        assert_eq!(g.velocities.last(), Some(&200.0));
    }
}

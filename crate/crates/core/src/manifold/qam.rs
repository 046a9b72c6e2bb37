//! Gray-labelled rectangular QAM with unit average energy.

use num_complex::Complex64;
use serde::Serialize;

use super::gray::{gray_decode, gray_encode};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Constellation {
    order: usize,
    levels_i: usize,
    levels_q: usize,
    points: Vec<Complex64>,
}

impl Constellation {
    /// `order` must be a power of two. Odd bit counts give a 2:1 rectangle,
    /// order 2 is BPSK and order 1 is the single point 1.
    pub fn new(order: usize) -> Self {
        assert!(order.is_power_of_two(), "constellation order must be a power of two");
        let bits = order.trailing_zeros();
        let levels_i = 1usize << bits.div_ceil(2);
        let levels_q = 1usize << (bits / 2);
        let pam = |m: usize, l: usize| 2.0 * l as f64 - (m as f64 - 1.0);
        let mut points = Vec::with_capacity(order);
        for li in 0..levels_i {
            for lq in 0..levels_q {
                points.push(Complex64::new(pam(levels_i, li), pam(levels_q, lq)));
            }
        }
        let energy = points.iter().map(|p| p.norm_sqr()).sum::<f64>() / order as f64;
        if energy > 0.0 {
            let s = energy.sqrt().recip();
            points.iter_mut().for_each(|p| *p *= s);
        } else {
            points[0] = Complex64::new(1.0, 0.0);
        }
        Self { order, levels_i, levels_q, points }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn bits(&self) -> u32 {
        self.order.trailing_zeros()
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn point(&self, index: usize) -> Complex64 {
        self.points[index]
    }

    /// Point index for a bit label: the high bits select the in-phase level,
    /// the low bits the quadrature level, each through a Gray map.
    pub fn index_of_label(&self, label: u64) -> usize {
        let q_bits = self.levels_q.trailing_zeros();
        let li = gray_decode(label >> q_bits) as usize;
        let lq = gray_decode(label & ((1 << q_bits) - 1)) as usize;
        li * self.levels_q + lq
    }

    pub fn label_of_index(&self, index: usize) -> u64 {
        let q_bits = self.levels_q.trailing_zeros();
        let li = (index / self.levels_q) as u64;
        let lq = (index % self.levels_q) as u64;
        (gray_encode(li) << q_bits) | gray_encode(lq)
    }

    /// Minimum-distance decision.
    pub fn nearest(&self, y: Complex64) -> usize {
        let mut best = 0;
        let mut best_d = f64::INFINITY;
        for (i, p) in self.points.iter().enumerate() {
            let d = (y - p).norm_sqr();
            if d < best_d {
                best_d = d;
                best = i;
            }
        }
        best
    }

    pub fn levels(&self) -> (usize, usize) {
        (self.levels_i, self.levels_q)
    }
}

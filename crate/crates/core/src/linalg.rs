//! Small dense complex helpers shared across modules.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type ComplexVector = Vec<Complex64>;

/// Hermitian inner product Σ conj(a_n)·b_n.
#[inline]
pub fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    debug_assert_eq!(a.len(), b.len());
    let (mut re, mut im) = (0.0, 0.0);
    for (x, y) in a.iter().zip(b) {
        re += x.re * y.re + x.im * y.im;
        im += x.re * y.im - x.im * y.re;
    }
    Complex64::new(re, im)
}

pub fn norm(a: &[Complex64]) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn normalize(a: &mut [Complex64]) {
    let n = norm(a);
    if n > 0.0 {
        let inv = 1.0 / n;
        a.iter_mut().for_each(|z| *z *= inv);
    }
}

#[inline]
pub fn cis(phase: f64) -> Complex64 {
    let (s, c) = phase.sin_cos();
    Complex64::new(c, s)
}

/// Column-major complex matrix; column `t` is the length-`rows` vector at sample `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Complex64::new(0.0, 0.0); rows * cols] }
    }

    pub fn from_columns(rows: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || !data.len().is_multiple_of(rows) {
            return Err(Error::ShapeMismatch(format!("{} entries do not fill columns of {rows}", data.len())));
        }
        Ok(Self { rows, cols: data.len() / rows, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, t: usize) -> &[Complex64] {
        &self.data[t * self.rows..(t + 1) * self.rows]
    }

    pub fn column_mut(&mut self, t: usize) -> &mut [Complex64] {
        &mut self.data[t * self.rows..(t + 1) * self.rows]
    }

    pub fn columns(&self) -> std::slice::ChunksExact<'_, Complex64> {
        self.data.chunks_exact(self.rows)
    }

    pub fn columns_mut(&mut self) -> std::slice::ChunksExactMut<'_, Complex64> {
        self.data.chunks_exact_mut(self.rows)
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }
}

//! Periodic grids, samples and spectral transforms.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Space {
    Position,
    Momentum,
}

impl Space {
    pub fn tag(self) -> u64 {
        match self {
            Space::Position => 0,
            Space::Momentum => 1,
        }
    }
}

/// Complex samples on a cubic periodic box `[-L, L)^dims`.
///
/// Points sit at cell centres, `x_m = -L + (m + 1/2) h` with `h = 2L/n`, so
/// reversing an index maps `x` to `-x`. Data is component-major: the sample for
/// component `c` at flat index `i` lives at `c * n^dims + i`, and the flat index
/// is row-major over the axes.
#[derive(Clone, Debug, PartialEq)]
pub struct GridState {
    pub n: usize,
    pub dims: usize,
    pub half_width: f64,
    pub components: usize,
    pub space: Space,
    pub mu: f64,
    pub data: Vec<Complex64>,
}

impl GridState {
    pub fn zeros(n: usize, dims: usize, half_width: f64, components: usize, space: Space, mu: f64) -> Result<Self> {
        if n < 2 || !n.is_power_of_two() {
            return Err(Error::Grid(format!("n must be a power of two >= 2, got {n}")));
        }
        if !(1..=3).contains(&dims) {
            return Err(Error::Grid(format!("dims must be 1, 2 or 3, got {dims}")));
        }
        if !(half_width > 0.0 && half_width.is_finite()) {
            return Err(Error::Grid(format!("half width must be positive, got {half_width}")));
        }
        if components == 0 {
            return Err(Error::Grid("at least one component is required".into()));
        }
        let len = n.pow(dims as u32) * components;
        Ok(Self { n, dims, half_width, components, space, mu, data: vec![Complex64::new(0.0, 0.0); len] })
    }

    pub fn points(&self) -> usize {
        self.n.pow(self.dims as u32)
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / self.n as f64
    }

    pub fn cell_volume(&self) -> f64 {
        self.spacing().powi(self.dims as i32)
    }

    pub fn coordinate(&self, m: usize) -> f64 {
        -self.half_width + (m as f64 + 0.5) * self.spacing()
    }

    /// Angular wavenumber of FFT bin `m`.
    pub fn wavenumber(&self, m: usize) -> f64 {
        let n = self.n as i64;
        let m = m as i64;
        let signed = if m < n / 2 { m } else { m - n };
        PI * signed as f64 / self.half_width
    }

    /// Per-axis bin indices of a flat index, axis 0 slowest.
    pub fn unflatten(&self, mut idx: usize) -> [usize; 3] {
        let mut out = [0; 3];
        for a in (0..self.dims).rev() {
            out[a] = idx % self.n;
            idx /= self.n;
        }
        out
    }

    /// Coordinates of a flat index, padded with zeros beyond `dims`.
    pub fn position_of(&self, idx: usize) -> [f64; 3] {
        let m = self.unflatten(idx);
        let mut out = [0.0; 3];
        for a in 0..self.dims {
            out[a] = self.coordinate(m[a]);
        }
        out
    }

    /// Wave vector of a flat FFT index.
    pub fn wavevector_of(&self, idx: usize) -> [f64; 3] {
        let m = self.unflatten(idx);
        let mut out = [0.0; 3];
        for a in 0..self.dims {
            out[a] = self.wavenumber(m[a]);
        }
        out
    }

    /// Flat index of the point `-x`.
    pub fn reversed_index(&self, idx: usize) -> usize {
        let m = self.unflatten(idx);
        let mut out = 0;
        for &ma in m.iter().take(self.dims) {
            out = out * self.n + (self.n - 1 - ma);
        }
        out
    }

    pub fn component(&self, c: usize) -> &[Complex64] {
        let np = self.points();
        &self.data[c * np..(c + 1) * np]
    }

    pub fn component_mut(&mut self, c: usize) -> &mut [Complex64] {
        let np = self.points();
        &mut self.data[c * np..(c + 1) * np]
    }

    pub fn norm_sq(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>() * self.cell_volume()
    }

    pub fn component_norm_sq(&self, c: usize) -> f64 {
        self.component(c).iter().map(|z| z.norm_sqr()).sum::<f64>() * self.cell_volume()
    }

    /// `<self, other>` with the flat cell-volume measure.
    pub fn inner(&self, other: &Self) -> Complex64 {
        self.data.iter().zip(&other.data).map(|(a, b)| a.conj() * b).sum::<Complex64>() * self.cell_volume()
    }

    pub fn same_shape(&self, other: &Self) -> bool {
        self.n == other.n
            && self.dims == other.dims
            && self.components == other.components
            && self.half_width == other.half_width
    }

    /// Largest modulus found within `margin` of any face of the box.
    pub fn edge_amplitude(&self, margin: f64) -> f64 {
        let mut worst: f64 = 0.0;
        for c in 0..self.components {
            for (i, z) in self.component(c).iter().enumerate() {
                let x = self.position_of(i);
                if x.iter().take(self.dims).any(|v| v.abs() > self.half_width - margin) {
                    worst = worst.max(z.norm());
                }
            }
        }
        worst
    }

    pub fn max_amplitude(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Normalized Gaussian `exp(-|x-c|^2/(4 w^2) + i k.x)` copied into every component
    /// listed in `weights`, scaled by the weight.
    pub fn gaussian(
        n: usize,
        dims: usize,
        half_width: f64,
        mu: f64,
        center: [f64; 3],
        width: f64,
        k0: [f64; 3],
        weights: &[Complex64],
    ) -> Result<Self> {
        let mut g = Self::zeros(n, dims, half_width, weights.len(), Space::Position, mu)?;
        if width <= 0.0 {
            return Err(Error::Grid(format!("width must be positive, got {width}")));
        }
        let np = g.points();
        let mut base = vec![Complex64::new(0.0, 0.0); np];
        for (i, v) in base.iter_mut().enumerate() {
            let x = g.position_of(i);
            let mut r2 = 0.0;
            let mut phase = 0.0;
            for a in 0..dims {
                r2 += (x[a] - center[a]).powi(2);
                phase += k0[a] * x[a];
            }
            *v = Complex64::from_polar((-r2 / (4.0 * width * width)).exp(), phase);
        }
        for (c, w) in weights.iter().enumerate() {
            for (dst, src) in g.component_mut(c).iter_mut().zip(&base) {
                *dst = src * w;
            }
        }
        let norm = g.norm_sq().sqrt();
        if norm > 0.0 {
            g.data.iter_mut().for_each(|z| *z /= norm);
        }
        for a in 0..dims {
            if (center[a].abs() + 4.0 * width) > half_width {
                return Err(Error::Boundary(format!(
                    "packet centre {} with width {} is within 4 widths of the boundary {}",
                    center[a], width, half_width
                )));
            }
        }
        Ok(g)
    }

    /// Plane wave on FFT bin `modes` in component `component`, unit norm.
    pub fn plane_wave(
        n: usize,
        dims: usize,
        half_width: f64,
        mu: f64,
        components: usize,
        terms: &[(usize, [i64; 3], Complex64)],
    ) -> Result<Self> {
        let mut g = Self::zeros(n, dims, half_width, components, Space::Position, mu)?;
        let np = g.points();
        for &(c, modes, amp) in terms {
            if c >= components {
                return Err(Error::Grid(format!("component {c} out of range")));
            }
            for i in 0..np {
                let x = g.position_of(i);
                let mut phase = 0.0;
                for a in 0..dims {
                    phase += PI * modes[a] as f64 / half_width * x[a];
                }
                g.data[c * np + i] += amp * Complex64::from_polar(1.0, phase);
            }
        }
        let norm = g.norm_sq().sqrt();
        if norm > 0.0 {
            g.data.iter_mut().for_each(|z| *z /= norm);
        }
        Ok(g)
    }
}

/// FFT plans for one grid size. Transforms act on every component.
pub struct Transform {
    n: usize,
    dims: usize,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl Transform {
    pub fn new(n: usize, dims: usize) -> Self {
        let mut planner = FftPlanner::new();
        Self { n, dims, forward: planner.plan_fft_forward(n), inverse: planner.plan_fft_inverse(n) }
    }

    pub fn for_grid(g: &GridState) -> Self {
        Self::new(g.n, g.dims)
    }

    fn run(&self, data: &mut [Complex64], inverse: bool) {
        let n = self.n;
        let np = n.pow(self.dims as u32);
        let plan = if inverse { &self.inverse } else { &self.forward };
        let mut line = vec![Complex64::new(0.0, 0.0); n];
        let mut scratch = vec![Complex64::new(0.0, 0.0); plan.get_inplace_scratch_len()];
        for block in data.chunks_mut(np) {
            for axis in 0..self.dims {
                let stride = n.pow((self.dims - 1 - axis) as u32);
                let outer = np / (n * stride);
                for o in 0..outer {
                    for s in 0..stride {
                        let base = o * n * stride + s;
                        for m in 0..n {
                            line[m] = block[base + m * stride];
                        }
                        plan.process_with_scratch(&mut line, &mut scratch);
                        for m in 0..n {
                            block[base + m * stride] = line[m];
                        }
                    }
                }
            }
        }
        if inverse {
            let scale = 1.0 / np as f64;
            data.iter_mut().for_each(|z| *z *= scale);
        }
    }

    /// Unnormalized forward DFT over all axes.
    pub fn forward(&self, data: &mut [Complex64]) {
        self.run(data, false);
    }

    /// Inverse DFT including the `1/n^dims` factor.
    pub fn inverse(&self, data: &mut [Complex64]) {
        self.run(data, true);
    }

    /// Applies the Fourier multiplier `f(k)` to a single component slice.
    pub fn apply_multiplier(&self, g: &GridState, data: &mut [Complex64], f: impl Fn([f64; 3]) -> Complex64) {
        self.forward(data);
        for (i, z) in data.iter_mut().enumerate() {
            *z *= f(g.wavevector_of(i % g.points()));
        }
        self.inverse(data);
    }

    /// Spectral `∂^α` of one component slice.
    pub fn derivative(&self, g: &GridState, data: &mut [Complex64], alpha: [u8; 3]) {
        if alpha == [0, 0, 0] {
            return;
        }
        self.apply_multiplier(g, data, |k| {
            let mut f = Complex64::new(1.0, 0.0);
            for a in 0..3 {
                for _ in 0..alpha[a] {
                    f *= Complex64::new(0.0, k[a]);
                }
            }
            f
        });
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transform_round_trip() {
        let g = GridState::gaussian(16, 2, 8.0, 1.0, [0.5, -0.5, 0.0], 1.0, [0.3, 0.0, 0.0], &[Complex64::new(1.0, 0.0)]).unwrap();
        let t = Transform::for_grid(&g);
        let mut d = g.data.clone();
        t.forward(&mut d);
        t.inverse(&mut d);
        let err = d.iter().zip(&g.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        assert!(err < 1e-14);
    }

    #[test]
    fn reversal_negates_coordinates() {
        let g = GridState::zeros(8, 3, 2.0, 1, Space::Momentum, 1.0).unwrap();
        for i in [0, 17, 100, 511] {
            let x = g.position_of(i);
            let y = g.position_of(g.reversed_index(i));
            for a in 0..3 {
                assert!((x[a] + y[a]).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn rejects_bad_sizes() {
        assert!(GridState::zeros(12, 1, 1.0, 1, Space::Position, 1.0).is_err());
        assert!(GridState::zeros(8, 4, 1.0, 1, Space::Position, 1.0).is_err());
    }
}

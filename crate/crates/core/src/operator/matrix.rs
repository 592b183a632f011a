use std::fmt;

use crate::scalar::{GaussianRational, OnShellScalar};
use crate::spin::ExactMatrix;

/// Square matrix with on-shell scalar entries, row-major.
#[derive(Clone, Debug)]
pub struct ScalarMatrix {
    dim: usize,
    data: Vec<OnShellScalar>,
}

impl ScalarMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, data: vec![OnShellScalar::zero(); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        Self::scalar(dim, OnShellScalar::one())
    }

    /// `s * Id`
    pub fn scalar(dim: usize, s: OnShellScalar) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = s.clone();
        }
        m
    }

    pub fn from_exact(m: &ExactMatrix) -> Self {
        Self { dim: m.dim, data: m.data.iter().map(|c| OnShellScalar::constant(c.clone())).collect() }
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> OnShellScalar) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Self { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &OnShellScalar {
        &self.data[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: OnShellScalar) {
        self.data[i * self.dim + j] = v;
    }

    pub fn entries(&self) -> &[OnShellScalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|a| a.is_zero())
    }

    fn map(&self, f: impl Fn(&OnShellScalar) -> OnShellScalar) -> Self {
        Self { dim: self.dim, data: self.data.iter().map(f).collect() }
    }

    pub fn add(&self, o: &Self) -> Self {
        Self { dim: self.dim, data: self.data.iter().zip(&o.data).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self { dim: self.dim, data: self.data.iter().zip(&o.data).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn neg(&self) -> Self {
        self.map(|a| a.neg())
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        self.map(|a| a.scale(c))
    }

    pub fn scale_by(&self, s: &OnShellScalar) -> Self {
        self.map(|a| a.mul(s))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.dim;
        let mut r = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = OnShellScalar::zero();
                for k in 0..n {
                    let a = self.get(i, k);
                    let b = o.get(k, j);
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = acc.add(&a.mul(b));
                }
                r.data[i * n + j] = acc;
            }
        }
        r
    }

    pub fn conj(&self) -> Self {
        self.map(|a| a.conj())
    }

    pub fn parity(&self) -> Self {
        self.map(|a| a.parity())
    }

    pub fn derive(&self, j: usize) -> Self {
        self.map(|a| a.derive(j))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.get(j, i).clone())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.get(j, i).conj())
    }

    /// `b ⊗ self` for a constant block pattern `b`.
    pub fn block(b: &ExactMatrix, m: &ScalarMatrix) -> Self {
        let (nb, n) = (b.dim, m.dim);
        let mut r = Self::zeros(nb * n);
        for bi in 0..nb {
            for bj in 0..nb {
                let c = b.get(bi, bj);
                if c.is_zero() {
                    continue;
                }
                for i in 0..n {
                    for j in 0..n {
                        r.set(bi * n + i, bj * n + j, m.get(i, j).scale(c));
                    }
                }
            }
        }
        r
    }

    /// If every entry is `c * delta_ij` for one scalar `c`, returns `c`.
    pub fn as_scalar_multiple(&self) -> Option<OnShellScalar> {
        let c = self.get(0, 0).clone();
        for i in 0..self.dim {
            for j in 0..self.dim {
                let e = self.get(i, j);
                let ok = if i == j { e == &c } else { e.is_zero() };
                if !ok {
                    return None;
                }
            }
        }
        Some(c)
    }

    pub fn render(&self) -> String {
        if self.dim == 1 {
            return self.data[0].render();
        }
        let rows: Vec<String> = (0..self.dim)
            .map(|i| {
                let cells: Vec<String> = (0..self.dim).map(|j| self.get(i, j).render()).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        format!("[{}]", rows.join(", "))
    }
}

impl PartialEq for ScalarMatrix {
    fn eq(&self, o: &Self) -> bool {
        self.dim == o.dim && self.data.iter().zip(&o.data).all(|(a, b)| a == b)
    }
}

impl fmt::Display for ScalarMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

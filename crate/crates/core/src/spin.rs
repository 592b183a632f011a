//! Spin matrices `S1, S2, S3` and the conjugation matrix `tau`.
//!
//! The basis is ordered by magnetic number `m = s, s-1, ..., -s`. Exact
//! matrices are available for `s = 0` and `s = 1/2`; larger spins need square
//! roots in the ladder coefficients and are only built in floating point.

use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::GaussianRational;

/// A spin value stored as `2s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Spin(pub u32);

impl Spin {
    pub const ZERO: Spin = Spin(0);
    pub const HALF: Spin = Spin(1);

    pub fn twice(self) -> u32 {
        self.0
    }

    pub fn dim(self) -> usize {
        self.0 as usize + 1
    }

    pub fn is_half_integer(self) -> bool {
        self.0 % 2 == 1
    }

    pub fn as_f64(self) -> f64 {
        self.0 as f64 / 2.0
    }

    /// `s(s+1)` as an exact rational.
    pub fn casimir(self) -> BigRational {
        let t = self.0 as i64;
        BigRational::new((t * (t + 2)).into(), 4.into())
    }

    pub fn exact_supported(self) -> bool {
        self.0 <= 1
    }

    /// Accepts `0`, `0.5`, `1/2`, `3/2`, `1`, `1.5`, ...
    pub fn parse(text: &str) -> Result<Spin> {
        let t = text.trim();
        let bad = || Error::BadSpin(text.to_string());
        if let Some((n, d)) = t.split_once('/') {
            let n: u32 = n.trim().parse().map_err(|_| bad())?;
            return match d.trim() {
                "1" => Ok(Spin(2 * n)),
                "2" => Ok(Spin(n)),
                _ => Err(bad()),
            };
        }
        let v: f64 = t.parse().map_err(|_| bad())?;
        let twice = v * 2.0;
        if !(0.0..=200.0).contains(&twice) || twice.fract() != 0.0 {
            return Err(bad());
        }
        Ok(Spin(twice as u32))
    }
}

impl fmt::Display for Spin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpinMode {
    Exact,
    Numeric,
}

/// Dense square matrix over the Gaussian rationals, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    pub dim: usize,
    pub data: Vec<GaussianRational>,
}

impl ExactMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, data: vec![GaussianRational::zero(); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = GaussianRational::one();
        }
        m
    }

    pub fn from_rows(rows: &[&[GaussianRational]]) -> Self {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for r in rows {
            assert_eq!(r.len(), dim, "matrix must be square");
            data.extend(r.iter().cloned());
        }
        Self { dim, data }
    }

    pub fn from_i64(dim: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), dim * dim);
        Self { dim, data: entries.iter().map(|&v| GaussianRational::from_i64(v)).collect() }
    }

    pub fn get(&self, i: usize, j: usize) -> &GaussianRational {
        &self.data[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: GaussianRational) {
        self.data[i * self.dim + j] = v;
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.dim;
        let mut r = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        r.data[i * n + j] += &(a * b);
                    }
                }
            }
        }
        r
    }

    pub fn add(&self, o: &Self) -> Self {
        Self { dim: self.dim, data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect() }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self { dim: self.dim, data: self.data.iter().map(|a| a * c).collect() }
    }

    pub fn neg(&self) -> Self {
        Self { dim: self.dim, data: self.data.iter().map(|a| -a).collect() }
    }

    pub fn conj(&self) -> Self {
        Self { dim: self.dim, data: self.data.iter().map(|a| a.conj()).collect() }
    }

    pub fn transpose(&self) -> Self {
        let n = self.dim;
        let mut r = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                r.set(j, i, self.get(i, j).clone());
            }
        }
        r
    }

    pub fn adjoint(&self) -> Self {
        self.transpose().conj()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|a| a.is_zero())
    }

    /// Kronecker product `self ⊗ o`.
    pub fn kron(&self, o: &Self) -> Self {
        let (a, b) = (self.dim, o.dim);
        let n = a * b;
        let mut r = Self::zeros(n);
        for i in 0..a {
            for j in 0..a {
                let x = self.get(i, j);
                if x.is_zero() {
                    continue;
                }
                for k in 0..b {
                    for l in 0..b {
                        r.set(i * b + k, j * b + l, x * o.get(k, l));
                    }
                }
            }
        }
        r
    }

    pub fn to_numeric(&self) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.dim, self.dim, |i, j| self.get(i, j).to_complex())
    }
}

#[derive(Clone, Debug)]
pub enum SpinMatrix {
    Exact(ExactMatrix),
    Numeric(DMatrix<Complex64>),
}

impl SpinMatrix {
    pub fn dim(&self) -> usize {
        match self {
            SpinMatrix::Exact(m) => m.dim,
            SpinMatrix::Numeric(m) => m.nrows(),
        }
    }

    pub fn mode(&self) -> SpinMode {
        match self {
            SpinMatrix::Exact(_) => SpinMode::Exact,
            SpinMatrix::Numeric(_) => SpinMode::Numeric,
        }
    }

    pub fn exact(&self) -> Option<&ExactMatrix> {
        match self {
            SpinMatrix::Exact(m) => Some(m),
            SpinMatrix::Numeric(_) => None,
        }
    }

    pub fn to_numeric(&self) -> DMatrix<Complex64> {
        match self {
            SpinMatrix::Exact(m) => m.to_numeric(),
            SpinMatrix::Numeric(m) => m.clone(),
        }
    }
}

fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

/// Ladder coefficient `<m+1| S+ |m>` squared: `s(s+1) - m(m+1)`, with `m = s - i`.
fn ladder_sq(s: Spin, row_below: usize) -> BigRational {
    let t = s.0 as i64;
    let two_m = t - 2 * row_below as i64;
    // s(s+1) - m(m+1) = (t(t+2) - 2m(2m+2)) / 4
    BigRational::new((t * (t + 2) - two_m * (two_m + 2)).into(), 4.into())
}

/// The three spin matrices of dimension `2s + 1`.
pub fn spin_matrices(s: Spin, mode: SpinMode) -> Result<[SpinMatrix; 3]> {
    let n = s.dim();
    match mode {
        SpinMode::Exact => {
            if !s.exact_supported() {
                return Err(Error::ExactModeUnsupported(s.to_string()));
            }
            let mut sp = ExactMatrix::zeros(n);
            for i in 1..n {
                let c = rational_sqrt(&ladder_sq(s, i)).ok_or_else(|| Error::ExactModeUnsupported(s.to_string()))?;
                sp.set(i - 1, i, GaussianRational::real(c));
            }
            let sm = sp.transpose();
            let half = GaussianRational::ratio(1, 2);
            let s1 = sp.add(&sm).scale(&half);
            let minus_half_i = GaussianRational::new(BigRational::zero(), BigRational::new((-1).into(), 2.into()));
            let s2 = sp.add(&sm.neg()).scale(&minus_half_i);
            let mut s3 = ExactMatrix::zeros(n);
            for i in 0..n {
                s3.set(i, i, GaussianRational::ratio(s.0 as i64 - 2 * i as i64, 2));
            }
            Ok([SpinMatrix::Exact(s1), SpinMatrix::Exact(s2), SpinMatrix::Exact(s3)])
        }
        SpinMode::Numeric => {
            let mut sp = DMatrix::<Complex64>::zeros(n, n);
            for i in 1..n {
                let c = ladder_sq(s, i).to_f64().unwrap_or(0.0).sqrt();
                sp[(i - 1, i)] = Complex64::new(c, 0.0);
            }
            let sm = sp.adjoint();
            let s1 = (&sp + &sm) * Complex64::new(0.5, 0.0);
            let s2 = (&sp - &sm) * Complex64::new(0.0, -0.5);
            let s3 = DMatrix::from_fn(n, n, |i, j| {
                if i == j {
                    Complex64::new(s.as_f64() - i as f64, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            });
            Ok([SpinMatrix::Numeric(s1), SpinMatrix::Numeric(s2), SpinMatrix::Numeric(s3)])
        }
    }
}

/// The anti-diagonal matrix with `tau[i][n-1-i] = (-1)^i`.
///
/// It satisfies `tau * conj(S_j) * tau^-1 = -S_j` and `tau * conj(tau) = (-1)^(2s)`.
pub fn tau_matrix(s: Spin, mode: SpinMode) -> Result<SpinMatrix> {
    let n = s.dim();
    let sign = |i: usize| if i % 2 == 0 { 1 } else { -1 };
    match mode {
        SpinMode::Exact => {
            if !s.exact_supported() {
                return Err(Error::ExactModeUnsupported(s.to_string()));
            }
            let mut t = ExactMatrix::zeros(n);
            for i in 0..n {
                t.set(i, n - 1 - i, GaussianRational::from_i64(sign(i)));
            }
            Ok(SpinMatrix::Exact(t))
        }
        SpinMode::Numeric => Ok(SpinMatrix::Numeric(DMatrix::from_fn(n, n, |i, j| {
            if j == n - 1 - i {
                Complex64::new(sign(i) as f64, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        }))),
    }
}

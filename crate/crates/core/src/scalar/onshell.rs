//! The on-shell coefficient ring: rational functions of `(p1, p2, p3, mu)` with
//! `p0` adjoined modulo `p0^2 = p1^2 + p2^2 + p3^2 + mu^2`.
//!
//! A value is stored as `(even + odd*p0) / den`, where `den` is kept as a
//! product of monic polynomial factors. Keeping the denominator factored makes
//! common denominators cheap and lets cancellation work factor by factor.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Signed;

use super::gaussian::GaussianRational;
use super::poly::{CompiledPoly, Poly, MU, NVARS};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct OnShellScalar {
    even: Poly,
    odd: Poly,
    den: BTreeMap<Poly, u32>,
}

/// Factors tried first whenever a new denominator polynomial shows up.
fn base_factors() -> &'static [Poly] {
    static BASE: OnceLock<Vec<Poly>> = OnceLock::new();
    BASE.get_or_init(|| {
        vec![Poly::var(0), Poly::var(1), Poly::var(2), Poly::var(MU), Poly::p_squared(), Poly::shell()]
    })
}

impl OnShellScalar {
    pub fn zero() -> Self {
        Self { even: Poly::zero(), odd: Poly::zero(), den: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::from_poly(Poly::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn from_i64(n: i64) -> Self {
        Self::constant(GaussianRational::from_i64(n))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Self::constant(GaussianRational::ratio(n, d))
    }

    pub fn i() -> Self {
        Self::constant(GaussianRational::i())
    }

    pub fn from_poly(p: Poly) -> Self {
        Self { even: p, odd: Poly::zero(), den: BTreeMap::new() }
    }

    /// `p_j` for j in 1..=3.
    pub fn p(j: usize) -> Self {
        assert!((1..=3).contains(&j), "momentum axis must be 1, 2 or 3");
        Self::from_poly(Poly::var(j - 1))
    }

    pub fn p0() -> Self {
        Self { even: Poly::zero(), odd: Poly::one(), den: BTreeMap::new() }
    }

    pub fn mu() -> Self {
        Self::from_poly(Poly::var(MU))
    }

    /// Builds `(even + odd*p0) / den` from raw parts, factoring and reducing `den`.
    pub fn from_parts(even: Poly, odd: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::assemble(even, odd, vec![(den, 1)]))
    }

    pub fn even(&self) -> &Poly {
        &self.even
    }

    pub fn odd(&self) -> &Poly {
        &self.odd
    }

    pub fn den_factors(&self) -> impl Iterator<Item = (&Poly, u32)> {
        self.den.iter().map(|(p, &e)| (p, e))
    }

    pub fn den_poly(&self) -> Poly {
        let mut d = Poly::one();
        for (f, &e) in &self.den {
            d = d.mul(&f.pow(e));
        }
        d
    }

    pub fn is_zero(&self) -> bool {
        self.even.is_zero() && self.odd.is_zero()
    }

    /// The constant value, if this scalar is a bare Gaussian rational.
    pub fn as_constant(&self) -> Option<GaussianRational> {
        if !self.odd.is_zero() || !self.den.is_empty() {
            return None;
        }
        self.even.as_constant()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// True when the value does not depend on `p1, p2, p3` (it may still involve `mu`).
    pub fn is_momentum_independent(&self) -> bool {
        (1..=3).all(|j| self.derive(j).is_zero())
    }

    fn assemble(mut even: Poly, mut odd: Poly, raw: Vec<(Poly, u32)>) -> Self {
        if even.is_zero() && odd.is_zero() {
            return Self::zero();
        }
        let mut den: BTreeMap<Poly, u32> = BTreeMap::new();
        let mut scale = GaussianRational::one();
        for (g, k) in raw {
            if k == 0 {
                continue;
            }
            let (c, parts) = split_factor(&g);
            scale = &scale * &c.pow(k);
            for (f, m) in parts {
                *den.entry(f).or_insert(0) += m * k;
            }
        }
        if !scale.is_one() {
            let inv = scale.inv().expect("denominator content is nonzero");
            even = even.scale(&inv);
            odd = odd.scale(&inv);
        }
        let mut out = Self { even, odd, den };
        out.cancel();
        out
    }

    /// Divides out denominator factors that also divide both numerator parts.
    fn cancel(&mut self) {
        let factors: Vec<Poly> = self.den.keys().cloned().collect();
        for f in factors {
            loop {
                let e = self.den[&f];
                if e == 0 {
                    break;
                }
                let qe = match self.even.exact_div(&f) {
                    Some(q) => q,
                    None => break,
                };
                let qo = match self.odd.exact_div(&f) {
                    Some(q) => q,
                    None => break,
                };
                self.even = qe;
                self.odd = qo;
                self.den.insert(f.clone(), e - 1);
            }
            if self.den[&f] == 0 {
                self.den.remove(&f);
            }
        }
        if self.even.is_zero() && self.odd.is_zero() {
            self.den.clear();
        }
    }

    fn common_den(&self, other: &Self) -> (BTreeMap<Poly, u32>, Poly, Poly) {
        let mut lcm = self.den.clone();
        for (f, &e) in &other.den {
            let slot = lcm.entry(f.clone()).or_insert(0);
            *slot = (*slot).max(e);
        }
        let mut ma = Poly::one();
        let mut mb = Poly::one();
        for (f, &e) in &lcm {
            let ea = self.den.get(f).copied().unwrap_or(0);
            let eb = other.den.get(f).copied().unwrap_or(0);
            if e > ea {
                ma = ma.mul(&f.pow(e - ea));
            }
            if e > eb {
                mb = mb.mul(&f.pow(e - eb));
            }
        }
        (lcm, ma, mb)
    }

    fn with_den(even: Poly, odd: Poly, den: BTreeMap<Poly, u32>) -> Self {
        let mut out = Self { even, odd, den };
        out.cancel();
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let (den, ma, mb) = self.common_den(o);
        let even = self.even.mul(&ma).add(&o.even.mul(&mb));
        let odd = self.odd.mul(&ma).add(&o.odd.mul(&mb));
        Self::with_den(even, odd, den)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        Self { even: self.even.neg(), odd: self.odd.neg(), den: self.den.clone() }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { even: self.even.scale(c), odd: self.odd.scale(c), den: self.den.clone() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if let Some(c) = o.as_constant() {
            return self.scale(&c);
        }
        if let Some(c) = self.as_constant() {
            return o.scale(&c);
        }
        let shell = Poly::shell();
        let even = self.even.mul(&o.even).add(&self.odd.mul(&o.odd).mul(&shell));
        let odd = self.even.mul(&o.odd).add(&self.odd.mul(&o.even));
        let mut den = self.den.clone();
        for (f, &e) in &o.den {
            *den.entry(f.clone()).or_insert(0) += e;
        }
        Self::with_den(even, odd, den)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplicative inverse, rationalizing so the denominator stays free of `p0`.
    pub fn invert(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let d = self.den_poly();
        if self.odd.is_zero() {
            return Ok(Self::assemble(d, Poly::zero(), vec![(self.even.clone(), 1)]));
        }
        let norm = self.even.mul(&self.even).sub(&self.odd.mul(&self.odd).mul(&Poly::shell()));
        if norm.is_zero() {
            // x^2 = y^2 * shell has no solution with polynomial x, y unless both vanish.
            return Err(Error::DivisionByZero);
        }
        let even = self.even.mul(&d);
        let odd = self.odd.neg().mul(&d);
        Ok(Self::assemble(even, odd, vec![(norm, 1)]))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.invert()?))
    }

    /// Partial derivative in `p_j`, j in 1..=3, with `d p0 / d p_j = p_j / p0`.
    pub fn derive(&self, j: usize) -> Self {
        assert!((1..=3).contains(&j), "momentum axis must be 1, 2 or 3");
        let v = j - 1;
        if self.is_zero() {
            return Self::zero();
        }
        let shell = Poly::shell();
        let pj = Poly::var(v);
        // Factors whose derivative is nonzero get one extra power in the result.
        let moving: Vec<(Poly, u32, Poly)> = self
            .den
            .iter()
            .filter(|(f, _)| f.depends_on(v))
            .map(|(f, &e)| (f.clone(), e, f.derive(v)))
            .collect();
        let mut big_f = Poly::one();
        for (f, _, _) in &moving {
            big_f = big_f.mul(f);
        }
        let has_odd = !self.odd.is_zero();
        // Over den * F (* shell when odd part present):
        // d(e + o p0) = de + do p0 + o pj p0 / shell
        let q = if has_odd { shell.clone() } else { Poly::one() };
        let mut even = q.mul(&big_f).mul(&self.even.derive(v));
        let mut odd = q.mul(&big_f).mul(&self.odd.derive(v));
        if has_odd {
            odd = odd.add(&big_f.mul(&self.odd).mul(&pj));
        }
        let mut sigma = Poly::zero();
        for (i, (_, e, df)) in moving.iter().enumerate() {
            let mut others = Poly::one();
            for (k, (g, _, _)) in moving.iter().enumerate() {
                if k != i {
                    others = others.mul(g);
                }
            }
            sigma = sigma.add(&df.mul(&others).scale(&GaussianRational::from_i64(*e as i64)));
        }
        if !sigma.is_zero() {
            let qs = q.mul(&sigma);
            even = even.sub(&self.even.mul(&qs));
            odd = odd.sub(&self.odd.mul(&qs));
        }
        let mut den = self.den.clone();
        for (f, _, _) in &moving {
            *den.get_mut(f).unwrap() += 1;
        }
        if has_odd {
            *den.entry(shell).or_insert(0) += 1;
        }
        Self::with_den(even, odd, den)
    }

    /// Substitutes `p_j -> -p_j`; `p0` and `mu` are fixed.
    pub fn parity(&self) -> Self {
        let mut sign = GaussianRational::one();
        let mut den = BTreeMap::new();
        for (f, &e) in &self.den {
            let g = f.parity();
            let (lc, monic) = g.make_monic().expect("nonzero factor");
            if e % 2 == 1 && !lc.is_one() {
                sign = &sign * &lc;
            }
            *den.entry(monic).or_insert(0) += e;
        }
        let inv = sign.inv().expect("unit");
        Self { even: self.even.parity().scale(&inv), odd: self.odd.parity().scale(&inv), den }
    }

    /// Complex conjugation of every coefficient.
    pub fn conj(&self) -> Self {
        let den = self.den.iter().map(|(f, &e)| (f.conj(), e)).collect();
        Self { even: self.even.conj(), odd: self.odd.conj(), den }
    }

    /// Rewrites `(e + o p0)/D` as `(e^2 - o^2 shell) / (D (e - o p0))` and cancels
    /// common factors; removable singularities such as `p = 0` in `1/(p0 + mu)`
    /// disappear in this form.
    fn conjugate_form(&self) -> (Poly, BTreeMap<Poly, u32>) {
        let mut num = self.even.mul(&self.even).sub(&self.odd.mul(&self.odd).mul(&Poly::shell()));
        let mut den = self.den.clone();
        for (f, e) in den.iter_mut() {
            while *e > 0 {
                match num.exact_div(f) {
                    Some(q) => {
                        num = q;
                        *e -= 1;
                    }
                    None => break,
                }
            }
        }
        den.retain(|_, e| *e > 0);
        (num, den)
    }

    /// Floating-point value at a point `(p1, p2, p3, mu)`, using the positive root for `p0`.
    pub fn eval_f64(&self, point: &[f64; NVARS]) -> Result<Complex64> {
        let p0 = (point[0] * point[0] + point[1] * point[1] + point[2] * point[2] + point[3] * point[3]).sqrt();
        let mut den = Complex64::new(1.0, 0.0);
        for (f, &e) in &self.den {
            den *= f.eval_f64(point).powu(e);
        }
        let num = self.even.eval_f64(point) + self.odd.eval_f64(point) * p0;
        if den.norm() != 0.0 {
            return Ok(num / den);
        }
        if self.odd.is_zero() {
            return Err(Error::Pole);
        }
        let (n2, d2) = self.conjugate_form();
        let mut den = self.even.eval_f64(point) - self.odd.eval_f64(point) * p0;
        for (f, &e) in &d2 {
            den *= f.eval_f64(point).powu(e);
        }
        if den.norm() == 0.0 {
            return Err(Error::Pole);
        }
        Ok(n2.eval_f64(point) / den)
    }

    /// Floating-point form for evaluation at many points.
    pub fn compile(&self) -> CompiledScalar {
        CompiledScalar {
            even: self.even.compile(),
            odd: self.odd.compile(),
            den: self.den.iter().map(|(f, &e)| (f.compile(), e)).collect(),
            source: self.clone(),
        }
    }

    /// Value at a rational point; the pole test is exact.
    pub fn eval(&self, point: &[BigRational; NVARS]) -> Result<Complex64> {
        let fp = [0, 1, 2, 3].map(|k| super::gaussian::rat_to_f64(&point[k]));
        if self.den.keys().all(|f| !f.eval_exact(point).is_zero()) {
            return self.eval_f64(&fp);
        }
        if self.odd.is_zero() {
            return Err(Error::Pole);
        }
        let (n2, d2) = self.conjugate_form();
        if d2.keys().any(|f| f.eval_exact(point).is_zero()) {
            return Err(Error::Pole);
        }
        let p0 = fp.iter().map(|x| x * x).sum::<f64>().sqrt();
        let mut den = self.even.eval_f64(&fp) - self.odd.eval_f64(&fp) * p0;
        for (f, &e) in &d2 {
            den *= f.eval_f64(&fp).powu(e);
        }
        if den.norm() == 0.0 {
            return Err(Error::Pole);
        }
        Ok(n2.eval_f64(&fp) / den)
    }

    /// Exact value at a rational point where `p0` is rational too.
    ///
    /// `p0` must be the positive root of the shell relation at `point`; returns
    /// `None` at a pole.
    pub fn eval_exact(&self, point: &[BigRational; NVARS], p0: &BigRational) -> Option<GaussianRational> {
        debug_assert!(!p0.is_negative());
        let mut den = GaussianRational::one();
        for (f, &e) in &self.den {
            den = &den * &f.eval_exact(point).pow(e);
        }
        let inv = den.inv()?;
        let num = &self.even.eval_exact(point) + &(&self.odd.eval_exact(point) * &GaussianRational::real(p0.clone()));
        Some(&num * &inv)
    }

    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let num = if self.odd.is_zero() {
            self.even.render_with(None)
        } else if self.even.is_zero() {
            self.odd.render_with(Some("p0"))
        } else {
            format!("{} + {}", self.even.render_with(None), self.odd.render_with(Some("p0")))
                .replace("+ -", "- ")
        };
        if self.den.is_empty() {
            return num;
        }
        let parts: Vec<String> = self
            .den
            .iter()
            .map(|(f, &e)| {
                let base = if f.len() == 1 && !f.to_string().contains('*') && f.total_degree() == 1 {
                    f.to_string()
                } else {
                    format!("({})", f)
                };
                if e == 1 {
                    base
                } else {
                    format!("{}^{}", base, e)
                }
            })
            .collect();
        let num_wrapped = if num.contains(' ') { format!("({})", num) } else { num };
        let den = if parts.len() == 1 { parts[0].clone() } else { format!("({})", parts.join("*")) };
        format!("{}/{}", num_wrapped, den)
    }
}

/// Splits a denominator polynomial into `(content, [(monic factor, power)])`.
fn split_factor(g: &Poly) -> (GaussianRational, Vec<(Poly, u32)>) {
    if let Some(c) = g.as_constant() {
        return (c, Vec::new());
    }
    let mut rest = g.clone();
    let mut parts = Vec::new();
    for b in base_factors() {
        let mut k = 0;
        while let Some(q) = rest.exact_div(b) {
            rest = q;
            k += 1;
            if rest.as_constant().is_some() {
                break;
            }
        }
        if k > 0 {
            parts.push((b.clone(), k));
        }
        if rest.as_constant().is_some() {
            break;
        }
    }
    if let Some(c) = rest.as_constant() {
        return (c, parts);
    }
    let (lc, monic) = rest.make_monic().expect("nonzero");
    parts.push((monic, 1));
    (lc, parts)
}

impl PartialEq for OnShellScalar {
    fn eq(&self, other: &Self) -> bool {
        self.sub(other).is_zero()
    }
}

impl fmt::Display for OnShellScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl From<GaussianRational> for OnShellScalar {
    fn from(c: GaussianRational) -> Self {
        Self::constant(c)
    }
}

impl From<i64> for OnShellScalar {
    fn from(n: i64) -> Self {
        Self::from_i64(n)
    }
}

#[cfg(test)]
fn big(n: i64) -> BigRational {
    BigRational::from_integer(num_bigint::BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p0() -> OnShellScalar {
        OnShellScalar::p0()
    }
    fn mu() -> OnShellScalar {
        OnShellScalar::mu()
    }
    fn p(j: usize) -> OnShellScalar {
        OnShellScalar::p(j)
    }

    #[test]
    fn p0_squared_is_shell() {
        assert_eq!(p0().mul(&p0()), OnShellScalar::from_poly(Poly::shell()));
        assert!(p0().mul(&p0()).den_factors().next().is_none());
    }

    #[test]
    fn difference_of_squares() {
        let r = p0().sub(&mu()).mul(&p0().add(&mu()));
        assert_eq!(r, OnShellScalar::from_poly(Poly::p_squared()));
    }

    #[test]
    fn cube_of_p0() {
        let r = p0().pow(3);
        assert!(r.even().is_zero());
        assert_eq!(r.odd(), &Poly::shell());
    }

    #[test]
    fn inverse_of_p0_plus_mu() {
        let a = p0().add(&mu());
        let inv = a.invert().unwrap();
        assert!(a.mul(&inv).is_one());
        let expect = OnShellScalar::from_parts(Poly::var(MU).neg(), Poly::one(), Poly::p_squared()).unwrap();
        assert_eq!(inv, expect);
    }

    #[test]
    fn inverse_of_mu_stays_simple() {
        let inv = mu().invert().unwrap();
        assert_eq!(inv.render(), "1/mu");
    }

    #[test]
    fn zero_has_no_inverse() {
        assert_eq!(OnShellScalar::zero().invert().unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(p0().derive(1), p(1).div(&p0()).unwrap());
        assert!(p(2).derive(1).is_zero());
        let f = p(1).div(&p0()).unwrap();
        let expect = p(1).mul(&p(2)).neg().div(&p0().pow(3)).unwrap();
        assert_eq!(f.derive(2), expect);
    }

    #[test]
    fn parity_and_conj() {
        let f = p(1).div(&p0()).unwrap();
        assert_eq!(f.parity(), f.neg());
        let g = OnShellScalar::i().mul(&p(1));
        assert_eq!(g.conj(), g.neg());
        let h = OnShellScalar::one().div(&p(1).add(&mu())).unwrap();
        assert_eq!(h.parity(), OnShellScalar::one().div(&mu().sub(&p(1))).unwrap());
    }

    #[test]
    fn eval_points() {
        let z = big(0);
        let pt = [z.clone(), z.clone(), z.clone(), big(1)];
        assert!((p0().eval(&pt).unwrap().re - 1.0).abs() < 1e-15);
        let pt = [big(3), z.clone(), z.clone(), big(4)];
        assert!((p0().eval(&pt).unwrap().re - 5.0).abs() < 1e-15);
        let pt = [z.clone(), z.clone(), z.clone(), big(1)];
        let h = OnShellScalar::one().div(&p0().add(&mu())).unwrap();
        assert!((h.eval(&pt).unwrap().re - 0.5).abs() < 1e-15);
        let k = OnShellScalar::one().div(&p(1)).unwrap();
        assert_eq!(k.eval(&pt).unwrap_err(), Error::Pole);
    }

    #[test]
    fn momentum_independence() {
        assert!(mu().mul(&mu()).is_momentum_independent());
        assert!(!p0().is_momentum_independent());
        let c = p0().mul(&p0()).sub(&OnShellScalar::from_poly(Poly::p_squared()));
        assert!(c.is_momentum_independent());
    }
}

/// [`OnShellScalar`] with `f64` coefficients. Falls back to the exact form where
/// the stored denominator vanishes.
#[derive(Clone, Debug)]
pub struct CompiledScalar {
    even: CompiledPoly,
    odd: CompiledPoly,
    den: Vec<(CompiledPoly, u32)>,
    source: OnShellScalar,
}

impl CompiledScalar {
    pub fn eval(&self, point: &[f64; NVARS]) -> Result<Complex64> {
        let p0 = (point[0] * point[0] + point[1] * point[1] + point[2] * point[2] + point[3] * point[3]).sqrt();
        let mut den = Complex64::new(1.0, 0.0);
        for (f, e) in &self.den {
            den *= f.eval(point).powu(*e);
        }
        if den.norm() != 0.0 {
            return Ok((self.even.eval(point) + self.odd.eval(point) * p0) / den);
        }
        self.source.eval_f64(point)
    }
}

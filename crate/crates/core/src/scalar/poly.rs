//! Sparse multivariate polynomials in `(p1, p2, p3, mu)` over the Gaussian rationals.
//!
//! Terms live in a `BTreeMap` keyed by exponent vectors, so iteration order is
//! lexicographic in `(p1, p2, p3, mu)` and the leading term is the last entry.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use num_rational::BigRational;

use super::gaussian::GaussianRational;

/// Number of polynomial variables: `p1, p2, p3, mu`.
pub const NVARS: usize = 4;
pub const MU: usize = 3;

pub const VAR_NAMES: [&str; NVARS] = ["p1", "p2", "p3", "mu"];

pub type Monomial = [u16; NVARS];

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: GaussianRational) -> Self {
        let mut p = Self::zero();
        p.add_term([0; NVARS], c);
        p
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn var(idx: usize) -> Self {
        let mut m = [0; NVARS];
        m[idx] = 1;
        let mut p = Self::zero();
        p.add_term(m, GaussianRational::one());
        p
    }

    /// `p1^2 + p2^2 + p3^2`
    pub fn p_squared() -> Self {
        let mut p = Self::zero();
        for j in 0..3 {
            let mut m = [0; NVARS];
            m[j] = 2;
            p.add_term(m, GaussianRational::one());
        }
        p
    }

    /// `p1^2 + p2^2 + p3^2 + mu^2`, the value of `p0^2` on the shell.
    pub fn shell() -> Self {
        let mut p = Self::p_squared();
        let mut m = [0; NVARS];
        m[MU] = 2;
        p.add_term(m, GaussianRational::one());
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, GaussianRational)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += &c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn leading(&self) -> Option<(&Monomial, &GaussianRational)> {
        self.terms.iter().next_back()
    }

    /// Constant value if the polynomial has no variable dependence.
    pub fn as_constant(&self) -> Option<GaussianRational> {
        match self.terms.len() {
            0 => Some(GaussianRational::zero()),
            1 => self.terms.get(&[0; NVARS]).cloned(),
            _ => None,
        }
    }

    pub fn depends_on(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m[var] > 0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.iter().map(|&e| e as u32).sum()).max().unwrap_or(0)
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(*m, c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(*m, -c);
        }
        r
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }

    pub fn scale(&self, k: &GaussianRational) -> Poly {
        if k.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, c)| (*m, c * k)).collect() }
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let mut r = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                let mut m = *ma;
                for k in 0..NVARS {
                    m[k] += mb[k];
                }
                r.add_term(m, ca * cb);
            }
        }
        r
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Partial derivative with respect to variable `var`.
    pub fn derive(&self, var: usize) -> Poly {
        let mut r = Poly::zero();
        for (m, c) in &self.terms {
            if m[var] == 0 {
                continue;
            }
            let mut m2 = *m;
            m2[var] -= 1;
            r.add_term(m2, c * &GaussianRational::from_i64(m[var] as i64));
        }
        r
    }

    /// Substitutes `p_j -> -p_j` for j = 1, 2, 3; `mu` is untouched.
    pub fn parity(&self) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let odd = (m[0] + m[1] + m[2]) % 2 == 1;
                    (*m, if odd { -c } else { c.clone() })
                })
                .collect(),
        }
    }

    pub fn conj(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (*m, c.conj())).collect() }
    }

    /// Divides by the leading coefficient; returns `(lc, monic)`.
    pub fn make_monic(&self) -> Option<(GaussianRational, Poly)> {
        let (_, lc) = self.leading()?;
        let lc = lc.clone();
        let inv = lc.inv()?;
        Some((lc, self.scale(&inv)))
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &Poly) -> Option<Poly> {
        let (dm, dc) = d.leading()?;
        let dm = *dm;
        let dc_inv = dc.inv()?;
        let mut r = self.clone();
        let mut q = Poly::zero();
        while let Some((rm, rc)) = r.leading() {
            if (0..NVARS).any(|k| rm[k] < dm[k]) {
                return None;
            }
            let mut tm = *rm;
            for k in 0..NVARS {
                tm[k] -= dm[k];
            }
            let tc = rc * &dc_inv;
            let t = Poly::from_terms([(tm, tc.clone())]);
            q.add_term(tm, tc);
            r = r.sub(&t.mul(d));
        }
        Some(q)
    }

    /// Coefficients converted to `f64` once, for repeated evaluation.
    pub fn compile(&self) -> CompiledPoly {
        CompiledPoly { terms: self.terms.iter().map(|(m, c)| (*m, c.to_complex())).collect() }
    }

    pub fn eval_f64(&self, point: &[f64; NVARS]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut v = 1.0;
            for k in 0..NVARS {
                v *= point[k].powi(m[k] as i32);
            }
            acc += c.to_complex() * v;
        }
        acc
    }

    pub fn eval_exact(&self, point: &[BigRational; NVARS]) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for (m, c) in &self.terms {
            let mut v = BigRational::from_integer(1.into());
            for k in 0..NVARS {
                for _ in 0..m[k] {
                    v *= &point[k];
                }
            }
            acc += &(c * &GaussianRational::real(v));
        }
        acc
    }

    /// Renders the polynomial with an optional extra factor appended to every monomial.
    pub(crate) fn render_with(&self, extra: Option<&str>) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let mut factors: Vec<String> = Vec::new();
            for k in 0..NVARS {
                match m[k] {
                    0 => {}
                    1 => factors.push(VAR_NAMES[k].to_string()),
                    e => factors.push(format!("{}^{}", VAR_NAMES[k], e)),
                }
            }
            if let Some(x) = extra {
                factors.push(x.to_string());
            }
            let (neg, mag) = if c.is_negative_real() { (true, -c) } else { (false, c.clone()) };
            let coeff = mag.to_string();
            let body = if factors.is_empty() {
                coeff
            } else if mag.is_one() {
                factors.join("*")
            } else {
                format!("{}*{}", coeff, factors.join("*"))
            };
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_with(None))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(i: usize) -> Poly {
        Poly::var(i)
    }

    #[test]
    fn difference_of_squares_divides() {
        let a = p(0).add(&p(3));
        let b = p(0).sub(&p(3));
        let prod = a.mul(&b);
        assert_eq!(prod.exact_div(&a).unwrap(), b);
        assert!(prod.exact_div(&p(1)).is_none());
    }

    #[test]
    fn parity_flips_odd_monomials_only() {
        let f = p(0).mul(&p(1)).add(&p(2)).add(&p(3));
        let g = p(0).mul(&p(1)).sub(&p(2)).add(&p(3));
        assert_eq!(f.parity(), g);
    }

    #[test]
    fn derivative_of_shell() {
        assert_eq!(Poly::shell().derive(1), p(1).scale(&GaussianRational::from_i64(2)));
    }

    #[test]
    fn render_is_readable() {
        let f = Poly::shell().sub(&p(0).scale(&GaussianRational::ratio(3, 2)));
        assert_eq!(f.to_string(), "p1^2 - 3/2*p1 + p2^2 + p3^2 + mu^2");
    }
}

/// Floating-point copy of a [`Poly`].
#[derive(Clone, Debug)]
pub struct CompiledPoly {
    terms: Vec<(Monomial, Complex64)>,
}

impl CompiledPoly {
    pub fn eval(&self, point: &[f64; NVARS]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut v = 1.0;
            for k in 0..NVARS {
                if m[k] > 0 {
                    v *= point[k].powi(m[k] as i32);
                }
            }
            acc += c * v;
        }
        acc
    }
}

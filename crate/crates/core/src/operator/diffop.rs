//! Matrix-coefficient differential operators on momentum-space wavefunctions.
//!
//! Every operator is kept in the normal form `sum M(p) ∂^α K^c Υ^u`, where `K`
//! is complex conjugation and `Υ` is the parity map `ψ(p) -> ψ(-p)`. All terms
//! of one operator share the same `c`, so an operator is either linear or
//! anti-linear.

use std::collections::BTreeMap;
use std::fmt;

use super::matrix::ScalarMatrix;
use crate::error::{Error, Result};
use crate::scalar::{GaussianRational, OnShellScalar};
use crate::spin::ExactMatrix;

pub type MultiIndex = [u8; 3];

/// Key of a normal-form term: derivative multi-index and parity flag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Signature {
    pub derivs: MultiIndex,
    pub parity: bool,
}

#[derive(Clone, Debug)]
pub struct DiffOperator {
    dim: usize,
    antilinear: bool,
    terms: BTreeMap<Signature, ScalarMatrix>,
}

fn order(a: &MultiIndex) -> u32 {
    a.iter().map(|&x| x as u32).sum()
}

fn binomial(n: u8, k: u8) -> i64 {
    let mut r = 1i64;
    for i in 0..k as i64 {
        r = r * (n as i64 - i) / (i + 1);
    }
    r
}

impl DiffOperator {
    pub fn zero(dim: usize) -> Self {
        Self { dim, antilinear: false, terms: BTreeMap::new() }
    }

    pub fn identity(dim: usize) -> Self {
        Self::multiplication(ScalarMatrix::identity(dim))
    }

    /// The multiplication operator `ψ -> M ψ`.
    pub fn multiplication(m: ScalarMatrix) -> Self {
        Self::term(m, [0, 0, 0], false, false)
    }

    /// `s * Id`
    pub fn scalar(dim: usize, s: OnShellScalar) -> Self {
        Self::multiplication(ScalarMatrix::scalar(dim, s))
    }

    pub fn constant(m: &ExactMatrix) -> Self {
        Self::multiplication(ScalarMatrix::from_exact(m))
    }

    /// `∂/∂p_j` acting on every component, j in 1..=3.
    pub fn partial(dim: usize, j: usize) -> Self {
        assert!((1..=3).contains(&j), "momentum axis must be 1, 2 or 3");
        let mut d = [0u8; 3];
        d[j - 1] = 1;
        Self::term(ScalarMatrix::identity(dim), d, false, false)
    }

    /// Complex conjugation `K`.
    pub fn conjugation(dim: usize) -> Self {
        Self::term(ScalarMatrix::identity(dim), [0, 0, 0], true, false)
    }

    /// Parity `Υ`.
    pub fn parity_op(dim: usize) -> Self {
        Self::term(ScalarMatrix::identity(dim), [0, 0, 0], false, true)
    }

    /// A single normal-form term `M ∂^α K^c Υ^u`.
    pub fn term(m: ScalarMatrix, derivs: MultiIndex, conj: bool, parity: bool) -> Self {
        let dim = m.dim();
        let mut terms = BTreeMap::new();
        if !m.is_zero() {
            terms.insert(Signature { derivs, parity }, m);
        }
        Self { dim, antilinear: conj, terms }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_antilinear(&self) -> bool {
        self.antilinear && !self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Signature, &ScalarMatrix)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, derivs: MultiIndex, parity: bool) -> Option<&ScalarMatrix> {
        self.terms.get(&Signature { derivs, parity })
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn order(&self) -> u32 {
        self.terms.keys().map(|s| order(&s.derivs)).max().unwrap_or(0)
    }

    fn check_dim(&self, o: &Self) -> Result<()> {
        if self.dim != o.dim {
            return Err(Error::DimensionMismatch(self.dim, o.dim));
        }
        Ok(())
    }

    fn insert(&mut self, sig: Signature, m: ScalarMatrix) {
        match self.terms.get_mut(&sig) {
            Some(existing) => {
                *existing = existing.add(&m);
                if existing.is_zero() {
                    self.terms.remove(&sig);
                }
            }
            None => {
                if !m.is_zero() {
                    self.terms.insert(sig, m);
                }
            }
        }
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check_dim(o)?;
        if o.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(o.clone());
        }
        if self.antilinear != o.antilinear {
            return Err(Error::MixedAntilinearity);
        }
        let mut r = self.clone();
        for (sig, m) in &o.terms {
            r.insert(*sig, m.clone());
        }
        Ok(r)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|m| m.neg())
    }

    /// Left multiplication by the constant `c`.
    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.dim);
        }
        self.map_coeffs(|m| m.scale(c))
    }

    fn map_coeffs(&self, f: impl Fn(&ScalarMatrix) -> ScalarMatrix) -> Self {
        let mut r = Self { dim: self.dim, antilinear: self.antilinear, terms: BTreeMap::new() };
        for (sig, m) in &self.terms {
            r.insert(*sig, f(m));
        }
        r
    }

    /// Normal form of `self ∘ o`.
    pub fn compose(&self, o: &Self) -> Result<Self> {
        self.check_dim(o)?;
        let mut r = Self { dim: self.dim, antilinear: self.antilinear ^ o.antilinear, terms: BTreeMap::new() };
        if self.is_zero() || o.is_zero() {
            r.antilinear = false;
            return Ok(r);
        }
        for (sa, ma) in &self.terms {
            for (sb, mb) in &o.terms {
                // Move K^c Υ^u of the left term through the right coefficient and derivatives.
                let mut m2 = mb.clone();
                if self.antilinear {
                    m2 = m2.conj();
                }
                if sa.parity {
                    m2 = m2.parity();
                }
                let negate = sa.parity && order(&sb.derivs) % 2 == 1;
                let parity = sa.parity ^ sb.parity;
                // ∂^α M = Σ_β C(α,β) (∂^β M) ∂^(α-β)
                let a = sa.derivs;
                for b1 in 0..=a[0] {
                    for b2 in 0..=a[1] {
                        for b3 in 0..=a[2] {
                            let mut dm = m2.clone();
                            for (axis, cnt) in [(1, b1), (2, b2), (3, b3)] {
                                for _ in 0..cnt {
                                    dm = dm.derive(axis);
                                }
                            }
                            if dm.is_zero() {
                                continue;
                            }
                            let mut c = binomial(a[0], b1) * binomial(a[1], b2) * binomial(a[2], b3);
                            if negate {
                                c = -c;
                            }
                            let coeff = ma.mul(&dm).scale(&GaussianRational::from_i64(c));
                            let derivs = [a[0] - b1 + sb.derivs[0], a[1] - b2 + sb.derivs[1], a[2] - b3 + sb.derivs[2]];
                            r.insert(Signature { derivs, parity }, coeff);
                        }
                    }
                }
            }
        }
        Ok(r)
    }

    /// `[A, B] = AB - BA`
    pub fn commutator(&self, o: &Self) -> Result<Self> {
        self.compose(o)?.sub(&o.compose(self)?)
    }

    /// `{A, B} = AB + BA`
    pub fn anticommutator(&self, o: &Self) -> Result<Self> {
        self.compose(o)?.add(&o.compose(self)?)
    }

    pub fn equals(&self, o: &Self) -> Result<bool> {
        self.check_dim(o)?;
        if self.is_zero() && o.is_zero() {
            return Ok(true);
        }
        if self.is_antilinear() != o.is_antilinear() {
            return Ok(false);
        }
        Ok(self.sub(o)?.is_zero())
    }

    /// Formal adjoint with respect to `<φ, ψ> = ∫ φ† ψ d³p / p0`.
    ///
    /// Uses `(∂_j)† = -∂_j + p_j / p0²`, `Υ† = Υ` and the conjugate transpose for
    /// coefficients.
    pub fn formal_adjoint(&self) -> Result<Self> {
        if self.is_antilinear() || self.order() > 2 {
            return Err(Error::UnsupportedAdjoint);
        }
        let n = self.dim;
        let p0sq_inv = OnShellScalar::p0().pow(2).invert()?;
        let dagger: Vec<Self> = (1..=3)
            .map(|j| {
                let w = DiffOperator::scalar(n, OnShellScalar::p(j).mul(&p0sq_inv));
                DiffOperator::partial(n, j).neg().add(&w)
            })
            .collect::<Result<_>>()?;
        let mut r = Self::zero(n);
        for (sig, m) in &self.terms {
            let mut t = Self::multiplication(m.adjoint());
            for axis in 0..3 {
                for _ in 0..sig.derivs[axis] {
                    t = dagger[axis].compose(&t)?;
                }
            }
            if sig.parity {
                t = Self::parity_op(n).compose(&t)?;
            }
            r = r.add(&t)?;
        }
        Ok(r)
    }

    /// Applies `A -> W A W⁻¹` with `W = diag(w, w̄) ⊗ Id` and `w = exp(-iπk/4)`.
    pub fn block_phase_twist(&self, k: i64) -> Result<Self> {
        if self.dim % 2 != 0 {
            return Err(Error::OddDimension(self.dim));
        }
        let h = self.dim / 2;
        // w² = (-i)^k, w̄² = i^k, w w̄ = 1.
        let w2 = GaussianRational::i_pow(-k);
        let wb2 = GaussianRational::i_pow(k);
        let anti = self.antilinear;
        Ok(self.map_coeffs(|m| {
            ScalarMatrix::from_fn(self.dim, |i, j| {
                let (bi, bj) = (i / h, j / h);
                let e = m.get(i, j);
                let f = match (anti, bi, bj) {
                    (false, 0, 1) => Some(&w2),
                    (false, 1, 0) => Some(&wb2),
                    (true, 0, 0) => Some(&w2),
                    (true, 1, 1) => Some(&wb2),
                    _ => None,
                };
                match f {
                    Some(c) => e.scale(c),
                    None => e.clone(),
                }
            })
        }))
    }

    /// `b ⊗ A` for a constant block pattern `b`.
    pub fn block(b: &ExactMatrix, a: &DiffOperator) -> Self {
        let mut r = Self { dim: b.dim * a.dim, antilinear: a.antilinear, terms: BTreeMap::new() };
        for (sig, m) in &a.terms {
            r.insert(*sig, ScalarMatrix::block(b, m));
        }
        r
    }

    /// The single scalar `c` with `self = c * Id`, if any.
    pub fn as_scalar_multiple(&self) -> Option<OnShellScalar> {
        if self.is_zero() {
            return Some(OnShellScalar::zero());
        }
        if self.antilinear || self.terms.len() != 1 {
            return None;
        }
        let m = self.coefficient([0, 0, 0], false)?;
        m.as_scalar_multiple()
    }

    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(sig, m)| {
                let mut factors = vec![if m.dim() == 1 { format!("({})", m.render()) } else { m.render() }];
                for (axis, &cnt) in sig.derivs.iter().enumerate() {
                    match cnt {
                        0 => {}
                        1 => factors.push(format!("d{}", axis + 1)),
                        c => factors.push(format!("d{}^{}", axis + 1, c)),
                    }
                }
                if self.antilinear {
                    factors.push("K".into());
                }
                if sig.parity {
                    factors.push("Y".into());
                }
                factors.join("*")
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Display for DiffOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Panicking composition, for operators whose dimensions are known to agree.
impl std::ops::Mul for &DiffOperator {
    type Output = DiffOperator;
    fn mul(self, o: &DiffOperator) -> DiffOperator {
        self.compose(o).expect("operator dimensions agree")
    }
}

impl std::ops::Add for &DiffOperator {
    type Output = DiffOperator;
    fn add(self, o: &DiffOperator) -> DiffOperator {
        DiffOperator::add(self, o).expect("compatible operators")
    }
}

impl std::ops::Sub for &DiffOperator {
    type Output = DiffOperator;
    fn sub(self, o: &DiffOperator) -> DiffOperator {
        DiffOperator::sub(self, o).expect("compatible operators")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(j: usize) -> DiffOperator {
        DiffOperator::scalar(1, OnShellScalar::p(j))
    }

    #[test]
    fn leibniz() {
        let d1 = DiffOperator::partial(1, 1);
        let lhs = &d1 * &p(1);
        let rhs = &(&p(1) * &d1) + &DiffOperator::identity(1);
        assert!(lhs.equals(&rhs).unwrap());
        assert!(d1.commutator(&p(1)).unwrap().equals(&DiffOperator::identity(1)).unwrap());
    }

    #[test]
    fn conjugation_flips_i() {
        let k = DiffOperator::conjugation(1);
        let i = DiffOperator::scalar(1, OnShellScalar::i());
        let lhs = &k * &i;
        let rhs = &DiffOperator::scalar(1, OnShellScalar::i().neg()) * &k;
        assert!(lhs.equals(&rhs).unwrap());
        assert!(lhs.is_antilinear());
    }

    #[test]
    fn parity_anticommutes_with_derivative() {
        let y = DiffOperator::parity_op(1);
        let d1 = DiffOperator::partial(1, 1);
        assert!((&y * &d1).equals(&(&d1 * &y).neg()).unwrap());
        assert!((&y * &y).equals(&DiffOperator::identity(1)).unwrap());
    }

    #[test]
    fn mixed_sum_is_rejected() {
        let k = DiffOperator::conjugation(1);
        assert_eq!(k.add(&DiffOperator::identity(1)).unwrap_err(), Error::MixedAntilinearity);
    }

    #[test]
    fn adjoint_of_partial() {
        let d1 = DiffOperator::partial(1, 1);
        let w = OnShellScalar::p(1).div(&OnShellScalar::p0().pow(2)).unwrap();
        let expect = &d1.neg() + &DiffOperator::scalar(1, w);
        assert!(d1.formal_adjoint().unwrap().equals(&expect).unwrap());
        assert!(p(1).formal_adjoint().unwrap().equals(&p(1)).unwrap());
    }

    #[test]
    fn twist_maps_rho1_to_rho2() {
        let rho1 = DiffOperator::constant(&ExactMatrix::from_i64(2, &[0, 1, 1, 0]));
        let i = GaussianRational::i();
        let z = GaussianRational::zero();
        let rho2 = DiffOperator::constant(&ExactMatrix::from_rows(&[&[z.clone(), -&i], &[i.clone(), z]]));
        assert!(rho1.block_phase_twist(1).unwrap().equals(&rho2).unwrap());
        let rho3 = DiffOperator::constant(&ExactMatrix::from_i64(2, &[1, 0, 0, -1]));
        assert!(rho3.block_phase_twist(1).unwrap().equals(&rho3).unwrap());
    }

    #[test]
    fn odd_dimension_twist_fails() {
        assert_eq!(DiffOperator::identity(3).block_phase_twist(1).unwrap_err(), Error::OddDimension(3));
    }
}

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// An exact complex number `re + i*im` with rational parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn from_i64(n: i64) -> Self {
        Self::new(BigRational::from_integer(n.into()), BigRational::zero())
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Self::new(BigRational::new(num.into(), den.into()), BigRational::zero())
    }

    pub fn real(re: BigRational) -> Self {
        Self::new(re, BigRational::zero())
    }

    pub fn i() -> Self {
        Self::new(BigRational::zero(), BigRational::one())
    }

    pub fn zero() -> Self {
        Self::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        Self::from_i64(1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(Self::new(&self.re / &n, -(&self.im / &n)))
    }

    /// `i^k` for any integer k.
    pub fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => Self::one(),
            1 => Self::i(),
            2 => Self::from_i64(-1),
            _ => -Self::i(),
        }
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (rat_to_f64(&self.re), rat_to_f64(&self.im))
    }

    pub fn to_complex(&self) -> num_complex::Complex64 {
        let (re, im) = self.to_f64_pair();
        num_complex::Complex64::new(re, im)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub(crate) fn is_negative_real(&self) -> bool {
        self.im.is_zero() && self.re.is_negative()
    }
}

pub(crate) fn rat_to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // Huge operands: scale both down by the same power of two.
            let shift = r.numer().bits().max(r.denom().bits()).saturating_sub(1000);
            let n = (r.numer() >> shift).to_f64().unwrap_or(0.0);
            let d = (r.denom() >> shift).to_f64().unwrap_or(1.0);
            n / d
        }
    }
}

pub(crate) fn fmt_rational(r: &BigRational) -> String {
    if r.denom() == &BigInt::one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", fmt_rational(&self.re)),
            (true, false) => {
                if self.im.is_one() {
                    write!(f, "i")
                } else if (-self.im.clone()).is_one() {
                    write!(f, "-i")
                } else {
                    write!(f, "{}*i", fmt_rational(&self.im))
                }
            }
            (false, false) => {
                let im = if self.im.is_negative() {
                    format!("-{}*i", fmt_rational(&-self.im.clone()))
                } else {
                    format!("+{}*i", fmt_rational(&self.im))
                };
                write!(f, "({}{})", fmt_rational(&self.re), im)
            }
        }
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, o: &GaussianRational) -> GaussianRational {
        if self.im.is_zero() && o.im.is_zero() {
            return GaussianRational::real(&self.re * &o.re);
        }
        GaussianRational::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

impl<'a> Div<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn div(self, o: &GaussianRational) -> GaussianRational {
        self * &o.inv().expect("division of GaussianRational by zero")
    }
}

impl Add for GaussianRational {
    type Output = GaussianRational;
    fn add(self, o: GaussianRational) -> GaussianRational {
        &self + &o
    }
}

impl Sub for GaussianRational {
    type Output = GaussianRational;
    fn sub(self, o: GaussianRational) -> GaussianRational {
        &self - &o
    }
}

impl Mul for GaussianRational {
    type Output = GaussianRational;
    fn mul(self, o: GaussianRational) -> GaussianRational {
        &self * &o
    }
}

impl Div for GaussianRational {
    type Output = GaussianRational;
    fn div(self, o: GaussianRational) -> GaussianRational {
        &self / &o
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, o: &GaussianRational) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, o: &GaussianRational) {
        self.re -= &o.re;
        self.im -= &o.im;
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re, -self.im)
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re.clone(), -self.im.clone())
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        Self::from_i64(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_one_plus_i() {
        let z = GaussianRational::new(BigRational::one(), BigRational::one());
        let w = z.inv().unwrap();
        assert_eq!(w, GaussianRational::new(BigRational::new(1.into(), 2.into()), BigRational::new((-1).into(), 2.into())));
        assert!((&z * &w).is_one());
    }

    #[test]
    fn zero_has_no_inverse() {
        assert!(GaussianRational::zero().inv().is_none());
    }

    #[test]
    fn powers_of_i_cycle() {
        assert_eq!(GaussianRational::i_pow(2), GaussianRational::from_i64(-1));
        assert_eq!(GaussianRational::i_pow(-1), -GaussianRational::i());
        assert_eq!(GaussianRational::i().pow(4), GaussianRational::one());
    }

    #[test]
    fn display_forms() {
        assert_eq!(GaussianRational::ratio(-3, 2).to_string(), "-3/2");
        assert_eq!(GaussianRational::i().to_string(), "i");
        assert_eq!((-GaussianRational::i()).to_string(), "-i");
        let z = GaussianRational::new(BigRational::one(), BigRational::new((-1).into(), 2.into()));
        assert_eq!(z.to_string(), "(1-1/2*i)");
    }
}

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::linalg::C64;

/// Arbitrary-precision Gaussian integer `re + i im`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussInt {
    pub re: BigInt,
    pub im: BigInt,
}

impl GaussInt {
    pub fn new(re: i64, im: i64) -> Self {
        GaussInt { re: re.into(), im: im.into() }
    }

    pub fn zero() -> Self {
        Self::new(0, 0)
    }

    pub fn one() -> Self {
        Self::new(1, 0)
    }

    pub fn i() -> Self {
        Self::new(0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    /// True for the four units `1, -1, i, -i`.
    pub fn is_unit(&self) -> bool {
        (self.re.abs() + self.im.abs()).is_one()
    }

    pub fn conj(&self) -> Self {
        GaussInt { re: self.re.clone(), im: -&self.im }
    }

    /// Field norm `re^2 + im^2`.
    pub fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn mul_i(&self) -> Self {
        GaussInt { re: -&self.im, im: self.re.clone() }
    }

    /// Exact division; `None` if `rhs` does not divide `self`.
    pub fn div_exact(&self, rhs: &GaussInt) -> Option<GaussInt> {
        let n = rhs.norm();
        if n.is_zero() {
            return None;
        }
        let num = self * &rhs.conj();
        if !(&num.re % &n).is_zero() || !(&num.im % &n).is_zero() {
            return None;
        }
        Some(GaussInt { re: num.re / &n, im: num.im / &n })
    }

    pub fn to_c64(&self) -> C64 {
        C64::new(self.re.to_f64().unwrap_or(f64::NAN), self.im.to_f64().unwrap_or(f64::NAN))
    }

    pub fn to_i64_pair(&self) -> Option<(i64, i64)> {
        Some((self.re.to_i64()?, self.im.to_i64()?))
    }
}

impl From<(i64, i64)> for GaussInt {
    fn from((re, im): (i64, i64)) -> Self {
        GaussInt::new(re, im)
    }
}

impl fmt::Display for GaussInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, -&self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl<'a> Add<&'a GaussInt> for &'a GaussInt {
    type Output = GaussInt;
    fn add(self, rhs: &GaussInt) -> GaussInt {
        GaussInt { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl<'a> Sub<&'a GaussInt> for &'a GaussInt {
    type Output = GaussInt;
    fn sub(self, rhs: &GaussInt) -> GaussInt {
        GaussInt { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl<'a> Mul<&'a GaussInt> for &'a GaussInt {
    type Output = GaussInt;
    fn mul(self, rhs: &GaussInt) -> GaussInt {
        GaussInt { re: &self.re * &rhs.re - &self.im * &rhs.im, im: &self.re * &rhs.im + &self.im * &rhs.re }
    }
}

impl Neg for &GaussInt {
    type Output = GaussInt;
    fn neg(self) -> GaussInt {
        GaussInt { re: -&self.re, im: -&self.im }
    }
}

impl Add for GaussInt {
    type Output = GaussInt;
    fn add(self, rhs: GaussInt) -> GaussInt {
        &self + &rhs
    }
}

impl Sub for GaussInt {
    type Output = GaussInt;
    fn sub(self, rhs: GaussInt) -> GaussInt {
        &self - &rhs
    }
}

impl Mul for GaussInt {
    type Output = GaussInt;
    fn mul(self, rhs: GaussInt) -> GaussInt {
        &self * &rhs
    }
}

impl Neg for GaussInt {
    type Output = GaussInt;
    fn neg(self) -> GaussInt {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn units_are_the_four_roots_of_unity() {
        let units: Vec<_> =
            (-2..=2).flat_map(|a| (-2..=2).map(move |b| GaussInt::new(a, b))).filter(|g| g.is_unit()).collect();
        assert_eq!(units.len(), 4);
        for u in &units {
            assert!((u * u).norm().is_one());
        }
    }

    #[test]
    fn exact_division() {
        let a = GaussInt::new(2, 1);
        let b = GaussInt::new(3, -4);
        let p = &a * &b;
        assert_eq!(p.div_exact(&a), Some(b));
        assert_eq!(GaussInt::new(1, 0).div_exact(&GaussInt::new(2, 1)), None);
    }

    #[test]
    fn display() {
        assert_eq!(GaussInt::new(1, -1).to_string(), "1-1i");
        assert_eq!(GaussInt::new(0, 3).to_string(), "3i");
        assert_eq!(GaussInt::new(-2, 0).to_string(), "-2");
    }
}

use std::fmt;

use super::gauss::GaussInt;
use crate::linalg::C64;

/// Golden ratio `(1 + sqrt 5) / 2`, root of `x^2 - x - 1`.
pub const THETA: f64 = 1.618_033_988_749_895;
/// Galois conjugate `1 - theta`.
pub const THETA_BAR: f64 = -0.618_033_988_749_894_9;

/// Element `a + b theta` of `Z[i, theta]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct RingElem {
    pub a: GaussInt,
    pub b: GaussInt,
}

impl RingElem {
    pub fn new(a: GaussInt, b: GaussInt) -> Self {
        RingElem { a, b }
    }

    pub fn from_gauss(a: GaussInt) -> Self {
        RingElem { a, b: GaussInt::zero() }
    }

    pub fn zero() -> Self {
        RingElem::from_gauss(GaussInt::zero())
    }

    pub fn one() -> Self {
        RingElem::from_gauss(GaussInt::one())
    }

    pub fn theta() -> Self {
        RingElem::new(GaussInt::zero(), GaussInt::one())
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// The Galois automorphism `theta -> 1 - theta`, fixing `Z[i]`.
    pub fn sigma(&self) -> Self {
        RingElem { a: &self.a + &self.b, b: -&self.b }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        RingElem { a: &self.a + &rhs.a, b: &self.b + &rhs.b }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        RingElem { a: &self.a - &rhs.a, b: &self.b - &rhs.b }
    }

    pub fn neg(&self) -> Self {
        RingElem { a: -&self.a, b: -&self.b }
    }

    /// Product using `theta^2 = theta + 1`.
    pub fn mul(&self, rhs: &Self) -> Self {
        let bd = &self.b * &rhs.b;
        let a = &(&self.a * &rhs.a) + &bd;
        let b = &(&(&self.a * &rhs.b) + &(&self.b * &rhs.a)) + &bd;
        RingElem { a, b }
    }

    pub fn scale(&self, k: &GaussInt) -> Self {
        RingElem { a: &self.a * k, b: &self.b * k }
    }

    pub fn mul_i(&self) -> Self {
        RingElem { a: self.a.mul_i(), b: self.b.mul_i() }
    }

    /// Relative norm `x sigma(x) = a^2 + ab - b^2` in `Z[i]`.
    pub fn norm(&self) -> GaussInt {
        let ab = &self.a * &self.b;
        &(&(&self.a * &self.a) + &ab) - &(&self.b * &self.b)
    }

    /// Complex value under `theta -> (1 + sqrt 5)/2`.
    pub fn to_c64(&self) -> C64 {
        self.a.to_c64() + self.b.to_c64() * THETA
    }

    /// Complex value of the conjugate, i.e. under `theta -> (1 - sqrt 5)/2`.
    pub fn to_c64_conj(&self) -> C64 {
        self.a.to_c64() + self.b.to_c64() * THETA_BAR
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + ({})θ", self.a, self.b)
    }
}

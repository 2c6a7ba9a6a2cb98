//! Exact arithmetic in the maximal order `O = Z[i,theta] + Z[i,theta] j` of the
//! Golden Code algebra `(Q(i,theta)/Q(i), sigma, i)`, and its norm-one unit group.
//!
//! An element `x1 + x2 j` has the matrix form
//!
//! ```text
//! [ x1            x2        ]
//! [ i sigma(x2)   sigma(x1) ]
//! ```
//!
//! with `j^2 = i` and `j x = sigma(x) j`.

mod enumerate;
mod gauss;
mod generators;
mod ring;

use std::fmt;

pub use enumerate::enumerate_norm_bounded;
pub use gauss::GaussInt;
pub use generators::{generator, generators, printed_inverses, UnitWord, GENERATOR_COUNT};
pub use ring::{RingElem, THETA, THETA_BAR};

use crate::error::{Error, Result};
use crate::linalg::{mat2, Mat2, C64};

/// Element `x1 + x2 j` of the maximal order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct OrderElement {
    pub x1: RingElem,
    pub x2: RingElem,
}

impl OrderElement {
    pub fn new(x1: RingElem, x2: RingElem) -> Self {
        OrderElement { x1, x2 }
    }

    /// Builds `c0 + c1 theta + (c2 + c3 theta) j` from the four `Z[i]` coordinates
    /// over the basis `{1, theta, j, theta j}`.
    pub fn from_coefficients(c: [GaussInt; 4]) -> Self {
        let [c0, c1, c2, c3] = c;
        OrderElement { x1: RingElem::new(c0, c1), x2: RingElem::new(c2, c3) }
    }

    pub fn from_small(c: [(i64, i64); 4]) -> Self {
        Self::from_coefficients(c.map(GaussInt::from))
    }

    pub fn coefficients(&self) -> [GaussInt; 4] {
        [self.x1.a.clone(), self.x1.b.clone(), self.x2.a.clone(), self.x2.b.clone()]
    }

    pub fn one() -> Self {
        OrderElement { x1: RingElem::one(), x2: RingElem::zero() }
    }

    pub fn minus_one() -> Self {
        Self::one().neg()
    }

    pub fn theta() -> Self {
        OrderElement { x1: RingElem::theta(), x2: RingElem::zero() }
    }

    pub fn j() -> Self {
        OrderElement { x1: RingElem::zero(), x2: RingElem::one() }
    }

    pub fn from_gauss(g: GaussInt) -> Self {
        OrderElement { x1: RingElem::from_gauss(g), x2: RingElem::zero() }
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// `1` or `-1`.
    pub fn is_plus_minus_one(&self) -> bool {
        self.is_one() || *self == Self::minus_one()
    }

    pub fn neg(&self) -> Self {
        OrderElement { x1: self.x1.neg(), x2: self.x2.neg() }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        OrderElement { x1: self.x1.add(&rhs.x1), x2: self.x2.add(&rhs.x2) }
    }

    /// `(x1 + x2 j)(y1 + y2 j) = (x1 y1 + i x2 sigma(y2)) + (x1 y2 + x2 sigma(y1)) j`.
    pub fn mul(&self, rhs: &Self) -> Self {
        let x1 = self.x1.mul(&rhs.x1).add(&self.x2.mul(&rhs.x2.sigma()).mul_i());
        let x2 = self.x1.mul(&rhs.x2).add(&self.x2.mul(&rhs.x1.sigma()));
        OrderElement { x1, x2 }
    }

    /// Determinant of the matrix form: `x1 sigma(x1) - i x2 sigma(x2)`.
    pub fn reduced_norm(&self) -> GaussInt {
        &self.x1.norm() - &self.x2.norm().mul_i()
    }

    /// `sigma(x1) - x2 j`, the adjugate of the matrix form. For a norm-one unit
    /// this is the inverse.
    pub fn adjugate(&self) -> Self {
        OrderElement { x1: self.x1.sigma(), x2: self.x2.neg() }
    }

    /// Inverse of a unit of reduced norm one.
    pub fn invert_unit(&self) -> Result<Self> {
        let n = self.reduced_norm();
        if !n.is_one() {
            return Err(Error::NotAUnit(n.to_string()));
        }
        Ok(self.adjugate())
    }

    /// Exact squared Frobenius norm of the matrix form.
    ///
    /// Each real coordinate pair `(p, q)` of `p + q theta` contributes
    /// `(p + q theta)^2 + (p + q theta')^2 = 2p^2 + 2pq + 3q^2`.
    pub fn frobenius_sq(&self) -> num_bigint::BigInt {
        let form = |p: &num_bigint::BigInt, q: &num_bigint::BigInt| {
            let two = num_bigint::BigInt::from(2);
            let three = num_bigint::BigInt::from(3);
            &two * p * p + &two * p * q + &three * q * q
        };
        form(&self.x1.a.re, &self.x1.b.re)
            + form(&self.x1.a.im, &self.x1.b.im)
            + form(&self.x2.a.re, &self.x2.b.re)
            + form(&self.x2.a.im, &self.x2.b.im)
    }

    /// Numeric matrix form with `theta = (1 + sqrt 5)/2`.
    pub fn embed(&self) -> Mat2 {
        let i = C64::new(0.0, 1.0);
        mat2(self.x1.to_c64(), self.x2.to_c64(), i * self.x2.to_c64_conj(), self.x1.to_c64_conj())
    }
}

impl fmt::Display for OrderElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [c0, c1, c2, c3] = self.coefficients();
        write!(f, "[{c0}, {c1}, {c2}, {c3}]")
    }
}

/// Evaluates a product of order elements left to right.
pub fn product<'a, I: IntoIterator<Item = &'a OrderElement>>(items: I) -> OrderElement {
    items.into_iter().fold(OrderElement::one(), |acc, x| acc.mul(x))
}

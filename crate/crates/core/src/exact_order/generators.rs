use std::fmt;
use std::sync::OnceLock;

use super::OrderElement;
use crate::error::{Error, Result};

/// Number of generators of the norm-one unit group (inverses excluded).
pub const GENERATOR_COUNT: usize = 8;

/// Coordinates over `{1, theta, j, theta j}` of the eight generators
///
/// ```text
/// u1 = i theta            u5 = (1+i) + (1 + i theta') j
/// u2 = i + (1+i) j        u6 = (1+i) + (1 + i theta) j
/// u3 = theta + (1+i) j    u7 = (1-i) + (theta' + i) j
/// u4 = theta - (1+i) j    u8 = (1-i) + (theta + i) j
/// ```
///
/// where `theta' = 1 - theta`.
const GENERATOR_COEFFS: [[(i64, i64); 4]; GENERATOR_COUNT] = [
    [(0, 0), (0, 1), (0, 0), (0, 0)],
    [(0, 1), (0, 0), (1, 1), (0, 0)],
    [(0, 0), (1, 0), (1, 1), (0, 0)],
    [(0, 0), (1, 0), (-1, -1), (0, 0)],
    [(1, 1), (0, 0), (1, 1), (0, -1)],
    [(1, 1), (0, 0), (1, 0), (0, 1)],
    [(1, -1), (0, 0), (1, 1), (-1, 0)],
    [(1, -1), (0, 0), (0, 1), (1, 0)],
];

/// The inverses as listed in matrix form next to each generator.
const PRINTED_INVERSE_COEFFS: [[(i64, i64); 4]; GENERATOR_COUNT] = [
    [(0, 1), (0, -1), (0, 0), (0, 0)],
    [(0, 1), (0, 0), (-1, -1), (0, 0)],
    [(1, 0), (-1, 0), (-1, -1), (0, 0)],
    [(1, 0), (-1, 0), (1, 1), (0, 0)],
    [(1, 1), (0, 0), (-1, -1), (0, 1)],
    [(1, 1), (0, 0), (-1, 0), (0, -1)],
    [(1, -1), (0, 0), (-1, -1), (1, 0)],
    [(1, -1), (0, 0), (0, -1), (-1, 0)],
];

fn table() -> &'static [OrderElement; 2 * GENERATOR_COUNT] {
    static TABLE: OnceLock<[OrderElement; 2 * GENERATOR_COUNT]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let fwd: Vec<OrderElement> = GENERATOR_COEFFS.iter().map(|c| OrderElement::from_small(*c)).collect();
        let inv: Vec<OrderElement> = fwd.iter().map(|u| u.invert_unit().expect("generator is a unit")).collect();
        let all: Vec<OrderElement> = fwd.into_iter().chain(inv).collect();
        all.try_into().expect("16 entries")
    })
}

/// Generator by letter: `1..=8` is `u_k`, `9..=16` is `u_{k-8}^{-1}`.
///
/// # Panics
///
/// Panics if `letter` is outside `1..=16`.
pub fn generator(letter: usize) -> OrderElement {
    assert!((1..=2 * GENERATOR_COUNT).contains(&letter), "generator letter {letter} out of range");
    table()[letter - 1].clone()
}

/// All sixteen generators and inverses in letter order.
pub fn generators() -> &'static [OrderElement; 2 * GENERATOR_COUNT] {
    table()
}

/// Inverses exactly as given in matrix form in the published generator table.
pub fn printed_inverses() -> Vec<OrderElement> {
    PRINTED_INVERSE_COEFFS.iter().map(|c| OrderElement::from_small(*c)).collect()
}

/// Word over the sixteen generator letters.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct UnitWord {
    pub letters: Vec<u8>,
}

impl UnitWord {
    pub fn new(letters: Vec<u8>) -> Result<Self> {
        if let Some(bad) = letters.iter().find(|&&l| l == 0 || l as usize > 2 * GENERATOR_COUNT) {
            return Err(Error::InvalidConfig(format!("generator letter {bad} out of range 1..=16")));
        }
        Ok(UnitWord { letters })
    }

    pub fn empty() -> Self {
        UnitWord::default()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Letter of the inverse generator.
    pub fn inverse_letter(letter: u8) -> u8 {
        let n = GENERATOR_COUNT as u8;
        if letter > n {
            letter - n
        } else {
            letter + n
        }
    }

    /// Word of the inverse element.
    pub fn inverse(&self) -> Self {
        UnitWord { letters: self.letters.iter().rev().map(|&l| Self::inverse_letter(l)).collect() }
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        UnitWord { letters }
    }

    /// Exact product `u_{l1} u_{l2} ... u_{ln}`.
    pub fn eval(&self) -> OrderElement {
        let t = table();
        self.letters.iter().fold(OrderElement::one(), |acc, &l| acc.mul(&t[l as usize - 1]))
    }
}

impl fmt::Display for UnitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, l) in self.letters.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "]")
    }
}

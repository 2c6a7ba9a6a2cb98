//! Golden Code encoder, its lattice basis, and the detectors.
//!
//! A codeword is `X = embed(alpha x) / sqrt 5` with `x = s1 + s2 theta + (s3 + s4 theta) j`
//! and `alpha = 1 + i theta'`. In vectorized form `vec(X) = Phi s` where the columns
//! of `Phi` are the vectorized images of `alpha {1, theta, j, theta j} / sqrt 5`.

mod alphabet;
mod detect;
mod ml;
mod mmse;

pub use alphabet::{Alphabet, SymbolVector};
pub use detect::{coset_round, zf_detect, zfdfe_detect, LinearDetector};
pub use ml::{lattice_ml_detect, ml_detect, ml_exhaustive};
pub use mmse::mmse_gdfe_preprocess;

use crate::error::Result;
use crate::exact_order::{GaussInt, OrderElement, RingElem};
use crate::linalg::{gauss_to_c64, Mat2, Mat4, Vec4, C64};

/// `alpha = 1 + i theta' = (1 + i) - i theta`.
pub fn alpha() -> RingElem {
    RingElem::new(GaussInt::new(1, 1), GaussInt::new(0, -1))
}

/// Column-major vectorisation `[[a, c], [b, d]] -> (a, b, c, d)`.
pub fn vectorize(x: &Mat2) -> Vec4 {
    Vec4::new(x[(0, 0)], x[(1, 0)], x[(0, 1)], x[(1, 1)])
}

pub fn devectorize(v: &Vec4) -> Mat2 {
    Mat2::new(v[0], v[2], v[1], v[3])
}

/// Generator matrix `Phi` of the code lattice over `Z[i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeBasis {
    pub phi: Mat4,
    /// `Phi^H`, which equals `Phi^-1`.
    pub phi_inv: Mat4,
}

impl LatticeBasis {
    pub fn golden() -> Self {
        build_basis()
    }
}

fn basis_element(k: usize) -> OrderElement {
    let mut c = [(0, 0); 4];
    c[k] = (1, 0);
    OrderElement::from_small(c)
}

pub fn build_basis() -> LatticeBasis {
    let a = OrderElement::new(alpha(), RingElem::zero());
    let scale = 1.0 / 5f64.sqrt();
    let mut phi = Mat4::zeros();
    for k in 0..4 {
        let w = a.mul(&basis_element(k)).embed() * C64::new(scale, 0.0);
        phi.set_column(k, &vectorize(&w));
    }
    LatticeBasis { phi, phi_inv: phi.adjoint() }
}

/// Codeword for symbols in the alphabet.
pub fn encode(s: &SymbolVector, alphabet: Alphabet) -> Result<Mat2> {
    alphabet.check(s)?;
    Ok(encode_unchecked(s))
}

/// Codeword for arbitrary Gaussian-integer coordinates.
pub fn encode_unchecked(s: &SymbolVector) -> Mat2 {
    let x = OrderElement::from_small(s.map(|g| (g.re, g.im)));
    let a = OrderElement::new(alpha(), RingElem::zero());
    a.mul(&x).embed() / C64::new(5f64.sqrt(), 0.0)
}

pub fn symbols_to_vec(s: &SymbolVector) -> Vec4 {
    Vec4::from_fn(|k, _| gauss_to_c64(s[k]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c, left_mult, GaussI64};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn vectorize_is_column_major() {
        let m = Mat2::new(c(1.0, 0.0), c(3.0, 0.0), c(2.0, 0.0), c(4.0, 0.0));
        assert_eq!(vectorize(&m), Vec4::new(c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0), c(4.0, 0.0)));
        assert_eq!(devectorize(&vectorize(&m)), m);
        assert_eq!(vectorize(&Mat2::identity()), Vec4::new(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)));
    }

    #[test]
    fn left_multiplication_is_block_diagonal() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut m = || Mat2::from_fn(|_, _| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
        let (a, b) = (m(), m());
        assert!((vectorize(&(a * b)) - left_mult(&a) * vectorize(&b)).norm() < 1e-13);
    }

    #[test]
    fn basis_is_unitary() {
        let b = build_basis();
        assert!((b.phi.adjoint() * b.phi - Mat4::identity()).norm() < 1e-12);
        assert!((b.phi.determinant().norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn encode_matches_basis() {
        let b = build_basis();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..100 {
            let s: SymbolVector =
                std::array::from_fn(|_| GaussI64::new(rng.random_range(-3..=3), rng.random_range(-3..=3)));
            let lhs = vectorize(&encode_unchecked(&s));
            assert!((lhs - b.phi * symbols_to_vec(&s)).norm() < 1e-12);
        }
    }

    #[test]
    fn codeword_has_closed_form_entries() {
        let one = GaussI64::new(1, 1);
        let x = encode_unchecked(&[one; 4]);
        let t = crate::exact_order::THETA;
        let tb = crate::exact_order::THETA_BAR;
        let a = c(1.0, tb);
        let ab = c(1.0, t);
        let s5 = 5f64.sqrt();
        let onec = c(1.0, 1.0);
        let top = a * onec * (1.0 + t) / s5;
        let bottom = ab * c(0.0, 1.0) * onec * (1.0 + tb) / s5;
        assert!((x[(0, 0)] - top).norm() < 1e-14);
        assert!((x[(0, 1)] - top).norm() < 1e-14);
        assert!((x[(1, 0)] - bottom).norm() < 1e-14);
        assert!((x[(1, 1)] - ab * onec * (1.0 + tb) / s5).norm() < 1e-14);
    }

    #[test]
    fn zero_symbols_give_zero_codeword() {
        assert_eq!(encode_unchecked(&[GaussI64::new(0, 0); 4]), Mat2::zeros());
    }

    #[test]
    fn four_qam_codebook_has_nonvanishing_determinants() {
        let pts = Alphabet::Qam4.points();
        let mut min_det = f64::INFINITY;
        for a in &pts {
            for b in &pts {
                for cc in &pts {
                    for d in &pts {
                        let x = encode_unchecked(&[*a, *b, *cc, *d]);
                        min_det = min_det.min(crate::linalg::det2(&x).norm());
                    }
                }
            }
        }
        assert!(min_det > 0.1, "{min_det}");
    }

    #[test]
    fn energy_per_symbol_matches_alphabet() {
        let pts = Alphabet::Qam4.points();
        let mut acc = 0.0;
        let mut n = 0;
        for a in &pts {
            for b in &pts {
                let x = encode_unchecked(&[*a, *b, *a, *b]);
                acc += crate::linalg::frob_sq(&x);
                n += 1;
            }
        }
        assert!((acc / (4 * n) as f64 - Alphabet::Qam4.energy()).abs() < 1e-12);
    }
}

use nalgebra::{ComplexField, QR};

use super::{Alphabet, LatticeBasis, SymbolVector};
use crate::error::{Error, Result};
use crate::linalg::{gauss_to_c64, left_mult, round_gauss, GaussI64, GaussMat4, Mat2, Mat4, Vec4, C64};

/// Nearest point of `offset + 2 Z[i]` to `z`.
pub fn coset_round(z: C64, offset: GaussI64) -> GaussI64 {
    let o = gauss_to_c64(offset);
    offset + round_gauss((z - o) / 2.0) * 2
}

/// Linear detection for the model `y = G M s + n`, where `M` is unimodular and
/// `s` lies on the offset grid `(1 + i) + 2 Z[i]^4`.
///
/// Decisions are taken on `t = M s`, which lies on the coset `M (1 + i) + 2 Z[i]^4`,
/// then mapped back through `M^-1` and clamped to the alphabet.
#[derive(Debug, Clone)]
pub struct LinearDetector {
    g_inv: Mat4,
    q_adj: Mat4,
    r: Mat4,
    m_inv: GaussMat4,
    offset: [GaussI64; 4],
}

impl LinearDetector {
    pub fn new(g: &Mat4, m: &GaussMat4) -> Result<Self> {
        let m_inv = m.inverse().ok_or_else(|| Error::NotAUnit(format!("det T = {}", m.det())))?;
        let g_inv = g.try_inverse().ok_or(Error::SingularChannel(0.0))?;
        let qr = QR::new(*g);
        let c = [GaussI64::new(1, 1); 4];
        Ok(LinearDetector { g_inv, q_adj: qr.q().adjoint(), r: qr.r(), m_inv, offset: m.mul_vec(&c) })
    }

    fn finish(&self, t: [GaussI64; 4], alphabet: Alphabet) -> SymbolVector {
        self.m_inv.mul_vec(&t).map(|g| alphabet.clamp(g))
    }

    /// Zero forcing: invert `G`, round each coordinate onto its coset.
    pub fn zf(&self, y: &Vec4, alphabet: Alphabet) -> SymbolVector {
        let z = self.g_inv * y;
        let t = std::array::from_fn(|k| coset_round(z[k], self.offset[k]));
        self.finish(t, alphabet)
    }

    /// Zero forcing with decision feedback on the QR factor of `G`, last coordinate first.
    pub fn zfdfe(&self, y: &Vec4, alphabet: Alphabet) -> SymbolVector {
        let z = self.q_adj * y;
        let mut t = [GaussI64::new(0, 0); 4];
        for k in (0..4).rev() {
            let mut acc = z[k];
            for (j, tj) in t.iter().enumerate().skip(k + 1) {
                acc -= self.r[(k, j)] * gauss_to_c64(*tj);
            }
            t[k] = coset_round(acc / self.r[(k, k)], self.offset[k]);
        }
        self.finish(t, alphabet)
    }

    /// `true` when the triangular factor has no off-diagonal coupling.
    pub fn is_diagonal(&self) -> bool {
        (0..4).all(|i| (0..4).all(|j| i == j || self.r[(i, j)].modulus() == 0.0))
    }
}

fn effective(e: &Mat2, basis: &LatticeBasis) -> Mat4 {
    left_mult(e) * basis.phi
}

/// Zero forcing after reduction: `y1 = E_l Phi T s + n`.
pub fn zf_detect(y1: &Vec4, e: &Mat2, t: &GaussMat4, basis: &LatticeBasis, alphabet: Alphabet) -> Result<SymbolVector> {
    Ok(LinearDetector::new(&effective(e, basis), t)?.zf(y1, alphabet))
}

/// Zero forcing with decision feedback after reduction.
pub fn zfdfe_detect(
    y1: &Vec4,
    e: &Mat2,
    t: &GaussMat4,
    basis: &LatticeBasis,
    alphabet: Alphabet,
) -> Result<SymbolVector> {
    Ok(LinearDetector::new(&effective(e, basis), t)?.zfdfe(y1, alphabet))
}

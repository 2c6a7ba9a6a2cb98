use nalgebra::{ComplexField, SMatrix, QR};

use crate::linalg::{Mat2, C64};

/// MMSE-GDFE left preprocessing.
///
/// Thin QR of the augmented channel `[H; I / sqrt(snr)] = [Q1; Q2] R`, with `R`
/// upper triangular and its diagonal real positive. Returns `(F, R)` with
/// `F = Q1^H`, so that `F Y = R X + (residual interference + filtered noise)`.
pub fn mmse_gdfe_preprocess(h: &Mat2, snr: f64) -> (Mat2, Mat2) {
    assert!(snr > 0.0, "snr must be positive");
    let reg = C64::new(1.0 / snr.sqrt(), 0.0);
    let mut aug = SMatrix::<C64, 4, 2>::zeros();
    aug.fixed_view_mut::<2, 2>(0, 0).copy_from(h);
    aug[(2, 0)] = reg;
    aug[(3, 1)] = reg;
    let qr = QR::new(aug);
    let mut q = qr.q();
    let mut r: Mat2 = qr.r();
    for k in 0..2 {
        let d = r[(k, k)];
        let phase = if d.modulus() > 0.0 { d / C64::new(d.modulus(), 0.0) } else { C64::new(1.0, 0.0) };
        for j in 0..2 {
            r[(k, j)] /= phase;
        }
        for i in 0..4 {
            q[(i, k)] *= phase;
        }
    }
    let q1: Mat2 = q.fixed_view::<2, 2>(0, 0).into_owned();
    (q1.adjoint(), r)
}

use super::{GaussInt, OrderElement};
use crate::error::{Error, Result};
use crate::linalg::det2;

/// Tolerance on the Frobenius boundary. The squared norm is an exact integer, so
/// this only absorbs a caller passing e.g. `8.9999999999`.
const BOUNDARY_TOL: f64 = 1e-9;

/// `2p^2 + 2pq + 3q^2`: contribution of one real coordinate pair `p + q theta`
/// (and its conjugate) to the squared Frobenius norm.
fn pair_form(p: i64, q: i64) -> i64 {
    2 * p * p + 2 * p * q + 3 * q * q
}

/// Every element of the norm-one group whose matrix form has squared
/// Frobenius norm at most `bound`.
///
/// The order is a rank-8 integer lattice on which the squared Frobenius norm is
/// the sum of four copies of the positive-definite form `2p^2 + 2pq + 3q^2`.
/// Points of the ellipsoid are enumerated pair by pair, screened by the numeric
/// determinant, and confirmed in exact arithmetic.
///
/// The result is sorted by squared norm and then by coefficients.
pub fn enumerate_norm_bounded(bound: f64) -> Result<Vec<OrderElement>> {
    if !(bound >= 2.0) {
        return Err(Error::BoundTooSmall(bound));
    }
    let b = (bound + BOUNDARY_TOL).floor() as i64;

    // Q(p,q) >= (5/3) p^2 and >= (5/2) q^2.
    let pmax = ((3 * b) as f64 / 5.0).sqrt().floor() as i64 + 1;
    let qmax = ((2 * b) as f64 / 5.0).sqrt().floor() as i64 + 1;
    let mut pairs: Vec<(i64, i64, i64)> = Vec::new();
    for p in -pmax..=pmax {
        for q in -qmax..=qmax {
            let v = pair_form(p, q);
            if v <= b {
                pairs.push((p, q, v));
            }
        }
    }
    pairs.sort_by_key(|&(_, _, v)| v);

    let mut found: Vec<(i64, [(i64, i64); 4])> = Vec::new();
    // pair k: 0 -> (c0.re, c1.re), 1 -> (c0.im, c1.im), 2 -> (c2.re, c3.re), 3 -> (c2.im, c3.im)
    for &(p0, q0, v0) in &pairs {
        for &(p1, q1, v1) in pairs.iter().take_while(|e| v0 + e.2 <= b) {
            for &(p2, q2, v2) in pairs.iter().take_while(|e| v0 + v1 + e.2 <= b) {
                for &(p3, q3, v3) in pairs.iter().take_while(|e| v0 + v1 + v2 + e.2 <= b) {
                    let coeffs = [(p0, p1), (q0, q1), (p2, p3), (q2, q3)];
                    if numeric_det_is_one(&coeffs) {
                        found.push((v0 + v1 + v2 + v3, coeffs));
                    }
                }
            }
        }
    }
    found.sort();

    let out: Vec<OrderElement> = found
        .into_iter()
        .map(|(_, c)| OrderElement::from_small(c))
        .filter(|u| u.reduced_norm() == GaussInt::one())
        .collect();
    Ok(out)
}

fn numeric_det_is_one(c: &[(i64, i64); 4]) -> bool {
    let u = OrderElement::from_small(*c);
    let d = det2(&u.embed());
    (d.re - 1.0).abs() < 1e-6 && d.im.abs() < 1e-6
}

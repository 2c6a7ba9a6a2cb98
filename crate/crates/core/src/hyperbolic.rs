//! Upper half-space model of hyperbolic 3-space.
//!
//! A point is `(z, r)` with `z = x + iy` and `r > 0`. `SL2(C)` acts by
//!
//! ```text
//! z* = ((az + b) conj(cz + d) + a conj(c) r^2) / (|cz + d|^2 + |c|^2 r^2)
//! r* = r / (|cz + d|^2 + |c|^2 r^2)
//! ```
//!
//! and `cosh rho(P, P') = 1 + d(P, P')^2 / (2 r r')` with `d` the Euclidean distance.
//! For `g` of determinant one, `||g||_F^2 = 2 cosh rho(J, g(J))`.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::linalg::{det2, Mat2, C64};

/// Point `(x, y, r)` of the upper half-space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct H3Point {
    pub x: f64,
    pub y: f64,
    pub r: f64,
}

/// The base point `(0, 0, 1)`, fixed exactly by the unitary matrices.
pub const J: H3Point = H3Point { x: 0.0, y: 0.0, r: 1.0 };

impl H3Point {
    /// # Panics
    ///
    /// Panics unless `r > 0`.
    pub fn new(x: f64, y: f64, r: f64) -> Self {
        assert!(r > 0.0, "point must lie in the upper half-space (r = {r})");
        H3Point { x, y, r }
    }

    pub fn z(&self) -> C64 {
        C64::new(self.x, self.y)
    }

    /// Euclidean distance to `other`.
    pub fn euclid_dist(&self, other: &H3Point) -> f64 {
        ((self.x - other.x).powi(2) + (self.y - other.y).powi(2) + (self.r - other.r).powi(2)).sqrt()
    }
}

/// Determinant-one isometry `[[a, b], [c, d]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Isometry {
    pub a: C64,
    pub b: C64,
    pub c: C64,
    pub d: C64,
}

impl Isometry {
    pub const DET_TOL: f64 = 1e-9;

    pub fn from_matrix(m: &Mat2) -> Result<Self> {
        let det = det2(m);
        if (det - C64::new(1.0, 0.0)).norm() > Self::DET_TOL {
            return Err(Error::InvalidConfig(format!("isometry determinant {det} is not 1")));
        }
        Ok(Self::from_matrix_unchecked(m))
    }

    pub fn from_matrix_unchecked(m: &Mat2) -> Self {
        Isometry { a: m[(0, 0)], b: m[(0, 1)], c: m[(1, 0)], d: m[(1, 1)] }
    }

    pub fn matrix(&self) -> Mat2 {
        Mat2::new(self.a, self.b, self.c, self.d)
    }

    pub fn act(&self, p: &H3Point) -> H3Point {
        act(&self.matrix(), p)
    }
}

/// Action of a determinant-one matrix on a point.
pub fn act(g: &Mat2, p: &H3Point) -> H3Point {
    let (a, b, c, d) = (g[(0, 0)], g[(0, 1)], g[(1, 0)], g[(1, 1)]);
    let z = p.z();
    let r2 = p.r * p.r;
    let czd = c * z + d;
    let den = czd.norm_sqr() + c.norm_sqr() * r2;
    let num = (a * z + b) * czd.conj() + a * c.conj() * r2;
    H3Point { x: num.re / den, y: num.im / den, r: p.r / den }
}

/// Image of `J` under the inverse of `g`, computed through the adjugate.
pub fn act_inverse(g: &Mat2, p: &H3Point) -> H3Point {
    let adj = Mat2::new(g[(1, 1)], -g[(0, 1)], -g[(1, 0)], g[(0, 0)]);
    act(&adj, p)
}

/// `cosh` of the hyperbolic distance.
pub fn cosh_dist(p: &H3Point, q: &H3Point) -> f64 {
    let d2 = (p.x - q.x).powi(2) + (p.y - q.y).powi(2) + (p.r - q.r).powi(2);
    1.0 + d2 / (2.0 * p.r * q.r)
}

/// Hyperbolic distance.
pub fn dist(p: &H3Point, q: &H3Point) -> f64 {
    cosh_dist(p, q).acosh()
}

/// Random determinant-one matrix: four standard complex Gaussians scaled by
/// the principal square root of the determinant.
pub fn random_sl2<R: Rng + ?Sized>(rng: &mut R) -> Mat2 {
    loop {
        let mut draw = || {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
        };
        let m = Mat2::new(draw(), draw(), draw(), draw());
        let det = det2(&m);
        if det.norm() > 1e-12 {
            return m / det.sqrt();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_order::{generator, THETA};
    use crate::linalg::{frob_sq, mat2};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn close(p: &H3Point, q: &H3Point, tol: f64) -> bool {
        p.euclid_dist(q) <= tol
    }

    #[test]
    fn identity_fixes_points() {
        let p = H3Point::new(0.3, -1.2, 0.7);
        assert!(close(&act(&Mat2::identity(), &p), &p, 0.0));
    }

    #[test]
    fn diagonal_scales_height() {
        let a = C64::new(1.5, -0.5);
        let g = mat2(a, C64::new(0.0, 0.0), C64::new(0.0, 0.0), a.inv());
        let q = act(&g, &J);
        assert!(close(&q, &H3Point::new(0.0, 0.0, a.norm_sqr()), 1e-15));
    }

    #[test]
    fn unitary_fixes_j() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let g = mat2(C64::new(s, 0.0), C64::new(0.0, s), C64::new(0.0, s), C64::new(s, 0.0));
        assert!(close(&act(&g, &J), &J, 1e-15));
    }

    #[test]
    fn distance_examples() {
        assert_eq!(cosh_dist(&J, &J), 1.0);
        let p1 = act(&generator(1).embed(), &J);
        assert!(close(&p1, &H3Point::new(0.0, 0.0, THETA * THETA), 1e-14));
        assert!((cosh_dist(&J, &p1) - 1.5).abs() < 1e-14);
        let p2 = act(&generator(2).embed(), &J);
        assert!((cosh_dist(&J, &p2) - 3.0).abs() < 1e-14);
    }

    #[test]
    fn action_is_a_homomorphism_and_an_isometry() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let g = random_sl2(&mut rng);
            let h = random_sl2(&mut rng);
            let p = H3Point::new(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0), rng.random_range(0.1..3.0));
            let q = H3Point::new(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0), rng.random_range(0.1..3.0));
            let lhs = act(&(g * h), &p);
            let rhs = act(&g, &act(&h, &p));
            assert!(lhs.euclid_dist(&rhs) <= 1e-9 * (1.0 + lhs.euclid_dist(&J)));
            let d0 = cosh_dist(&p, &q);
            let d1 = cosh_dist(&act(&g, &p), &act(&g, &q));
            assert!((d0 - d1).abs() <= 1e-9 * d0);
        }
    }

    #[test]
    fn sign_does_not_change_the_action() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g = random_sl2(&mut rng);
        let p = H3Point::new(0.2, 0.1, 0.9);
        assert_eq!(act(&g, &p), act(&(-g), &p));
    }

    #[test]
    fn frobenius_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..1000 {
            let g = random_sl2(&mut rng);
            let f = frob_sq(&g);
            assert!((f - 2.0 * cosh_dist(&J, &act(&g, &J))).abs() <= 1e-9 * f);
        }
    }

    #[test]
    fn inverse_action_undoes_action() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let g = random_sl2(&mut rng);
        let p = H3Point::new(-0.4, 0.8, 1.3);
        assert!(close(&act_inverse(&g, &act(&g, &p)), &p, 1e-9));
    }

    #[test]
    #[should_panic]
    fn boundary_points_rejected() {
        H3Point::new(0.0, 0.0, 0.0);
    }
}

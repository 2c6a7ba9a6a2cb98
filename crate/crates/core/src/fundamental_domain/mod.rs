//! Dirichlet polyhedron of the norm-one unit group centred at `J`.
//!
//! For `g = [[a, b], [c, d]]` the half-space of points at least as close to `J`
//! as to `g(J)` is
//!
//! ```text
//! (C - 1)(x^2 + y^2 + r^2) - 2 A x - 2 B y + (A^2 + B^2 + 1)/C - 1 >= 0
//! ```
//!
//! with `A + iB = b conj(d) + a conj(c)` and `C = |c|^2 + |d|^2`. Its boundary is the
//! hemisphere of centre `(A, B)/(C - 1)` and squared radius `((A^2 + B^2)/(C - 1)^2 + 1)/C`.

mod area;
mod polyhedron;
mod quad;
mod tables;
mod volume;

pub use area::{area_bound, AreaBoundReport, AreaTerm};
pub use polyhedron::{ball_radii, build_polyhedron, closed_form_vertices, LabelledVertex, Polyhedron, DEFAULT_BOUND};
pub use quad::integrate;
pub use tables::{
    bisector_closed_forms, verify_tables, BisectorRow, CycleRow, RelationRow, RotationRow, RowStatus, TableReport,
    VertexActionRow, VertexRow, RELATIONS,
};
pub use volume::{volume_mc, VolumeEstimate, BOX_R, BOX_XY, MIN_SAMPLES, TARGET_VOLUME};

use crate::error::{Error, Result};
use crate::exact_order::OrderElement;
use crate::hyperbolic::{act, cosh_dist, H3Point, J};

/// Which side of its boundary the half-space lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    /// Inside the hemisphere (`C < 1`).
    Interior,
    /// Outside the hemisphere (`C > 1`).
    Exterior,
    /// Vertical plane (`C = 1`); `center` then holds the normal `(A, B)` and
    /// `radius` is infinite.
    Plane,
}

/// Boundary of the half-space `D_g(J)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BisectorSphere {
    pub center: (f64, f64),
    pub radius: f64,
    pub side: Side,
    pub unit: OrderElement,
    coef_a: f64,
    coef_b: f64,
    coef_c: f64,
}

const PLANE_TOL: f64 = 1e-12;

/// Bisector between `J` and `u(J)`.
pub fn bisector_of(u: &OrderElement) -> Result<BisectorSphere> {
    let m = u.embed();
    let (a, b, c, d) = (m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]);
    let ab = b * d.conj() + a * c.conj();
    let cc = c.norm_sqr() + d.norm_sqr();
    if cosh_dist(&act(&m, &J), &J) - 1.0 < 1e-12 {
        return Err(Error::UnitaryElement);
    }
    let (side, center, radius) = if (cc - 1.0).abs() < PLANE_TOL {
        (Side::Plane, (ab.re, ab.im), f64::INFINITY)
    } else {
        let center = (ab.re / (cc - 1.0), ab.im / (cc - 1.0));
        let radius = ((ab.norm_sqr() / (cc - 1.0).powi(2) + 1.0) / cc).sqrt();
        (if cc < 1.0 { Side::Interior } else { Side::Exterior }, center, radius)
    };
    Ok(BisectorSphere { center, radius, side, unit: u.clone(), coef_a: ab.re, coef_b: ab.im, coef_c: cc })
}

impl BisectorSphere {
    /// `(A, B, C)` of the defining inequality.
    pub fn coefficients(&self) -> (f64, f64, f64) {
        (self.coef_a, self.coef_b, self.coef_c)
    }

    /// Signed margin, non-negative exactly on the half-space. For spheres this
    /// is `+-(|P - centre|^2 - radius^2)`, so its scale is Euclidean.
    pub fn margin(&self, p: &H3Point) -> f64 {
        match self.side {
            Side::Plane => {
                let (a, b, c) = (self.coef_a, self.coef_b, self.coef_c);
                let n = (a * a + b * b).sqrt();
                ((a * a + b * b + 1.0) / c - 1.0 - 2.0 * a * p.x - 2.0 * b * p.y) / (2.0 * n)
            }
            side => {
                let d2 = (p.x - self.center.0).powi(2) + (p.y - self.center.1).powi(2) + p.r * p.r;
                let v = d2 - self.radius * self.radius;
                if side == Side::Exterior {
                    v
                } else {
                    -v
                }
            }
        }
    }

    pub fn contains(&self, p: &H3Point) -> bool {
        self.margin(p) >= 0.0
    }
}

/// `cosh rho(P, J) <= cosh rho(P, u(J))`, evaluated directly.
pub fn closer_to_j(u: &OrderElement, p: &H3Point) -> bool {
    let q = act(&u.embed(), &J);
    cosh_dist(p, &J) <= cosh_dist(p, &q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_order::{generator, THETA};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn u1_bisector() {
        let s = bisector_of(&generator(1)).unwrap();
        assert_eq!(s.side, Side::Interior);
        assert!(s.center.0.abs() < 1e-15 && s.center.1.abs() < 1e-15);
        assert!((s.radius - THETA).abs() < 1e-14);
    }

    #[test]
    fn u2_bisector_sits_below_the_diagonal() {
        let s = bisector_of(&generator(2)).unwrap();
        assert_eq!(s.side, Side::Exterior);
        assert!((s.center.0 - 1.0).abs() < 1e-14 && (s.center.1 + 1.0).abs() < 1e-14);
        assert!((s.radius - 1.0).abs() < 1e-14);
    }

    #[test]
    fn u5_bisector_closed_form() {
        let s5 = 5f64.sqrt();
        let s = bisector_of(&generator(5)).unwrap();
        assert!((s.center.0 - (19.0 - 9.0 * s5) / 22.0).abs() < 1e-12);
        assert!((s.center.1 - (-9.0 - 5.0 * s5) / 22.0).abs() < 1e-12);
        assert!((s.radius - 7f64.sqrt() / 22.0 * (7.0 - s5)).abs() < 1e-12);
    }

    #[test]
    fn unitary_units_have_no_bisector() {
        assert_eq!(bisector_of(&OrderElement::one()), Err(Error::UnitaryElement));
        assert_eq!(bisector_of(&OrderElement::minus_one()), Err(Error::UnitaryElement));
    }

    #[test]
    fn membership_agrees_with_distances() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for letter in 1..=16 {
            let u = generator(letter);
            let s = bisector_of(&u).unwrap();
            for _ in 0..500 {
                let p =
                    H3Point::new(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0), rng.random_range(0.05..2.5));
                if s.margin(&p).abs() > 1e-9 {
                    assert_eq!(s.contains(&p), closer_to_j(&u, &p), "letter {letter}");
                }
            }
        }
    }
}

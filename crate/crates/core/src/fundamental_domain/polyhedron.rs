use super::{bisector_of, BisectorSphere, Side};
use crate::error::{Error, Result};
use crate::exact_order::{enumerate_norm_bounded, generators, OrderElement, THETA, THETA_BAR};
use crate::hyperbolic::{cosh_dist, H3Point, J};

/// Incidence tolerance for vertices on faces and for deduplication.
const INCIDENCE_TOL: f64 = 1e-9;

/// Intersection of the bisector half-spaces of the order's small units.
#[derive(Debug, Clone)]
pub struct Polyhedron {
    /// The face-carrying constraints, in generator letter order.
    pub constraints: Vec<BisectorSphere>,
    /// Generator letter (`1..=16`) of each constraint.
    pub letters: Vec<u8>,
    pub vertices: Vec<H3Point>,
}

impl Polyhedron {
    pub fn contains(&self, p: &H3Point) -> bool {
        self.constraints.iter().all(|s| s.contains(p))
    }

    /// Smallest margin over all constraints; non-negative inside.
    pub fn margin(&self, p: &H3Point) -> f64 {
        self.constraints.iter().map(|s| s.margin(p)).fold(f64::INFINITY, f64::min)
    }

    pub fn face_count(&self) -> usize {
        self.constraints.len()
    }

    /// Constraints passing through `v`.
    pub fn faces_at(&self, v: &H3Point) -> Vec<u8> {
        self.constraints.iter().zip(&self.letters).filter(|(s, _)| s.margin(v).abs() < 1e-7).map(|(_, &l)| l).collect()
    }
}

/// Redundancy test in the boundary plane: an exterior half-space whose disk
/// lies inside another exterior disk, or misses the interior disk, adds nothing.
fn prune(spheres: Vec<BisectorSphere>) -> Vec<BisectorSphere> {
    let interiors: Vec<&BisectorSphere> = spheres.iter().filter(|s| s.side == Side::Interior).collect();
    let dist = |a: (f64, f64), b: (f64, f64)| ((a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)).sqrt();
    let keep: Vec<bool> = spheres
        .iter()
        .enumerate()
        .map(|(i, s)| {
            if s.side != Side::Exterior {
                return true;
            }
            if interiors.iter().any(|t| dist(s.center, t.center) >= s.radius + t.radius) {
                return false;
            }
            !spheres.iter().enumerate().any(|(j, t)| {
                j != i
                    && t.side == Side::Exterior
                    && dist(s.center, t.center) + s.radius <= t.radius + 1e-12
                    && (t.radius > s.radius + 1e-12 || j < i)
            })
        })
        .collect();
    spheres.into_iter().zip(keep).filter_map(|(s, k)| k.then_some(s)).collect()
}

/// Quadric coefficients `alpha (x^2 + y^2 + r^2) + beta x + gamma y + kappa`.
fn quadric(s: &BisectorSphere) -> [f64; 4] {
    match s.side {
        Side::Plane => {
            let (a, b, c) = s.coefficients();
            [0.0, -2.0 * a, -2.0 * b, (a * a + b * b + 1.0) / c - 1.0]
        }
        _ => {
            let (cx, cy) = s.center;
            [1.0, -2.0 * cx, -2.0 * cy, cx * cx + cy * cy - s.radius * s.radius]
        }
    }
}

fn triple_point(s: [&BisectorSphere; 3]) -> Option<H3Point> {
    let q = s.map(quadric);
    let pivot = (0..3).find(|&k| q[k][0] != 0.0)?;
    let others: Vec<usize> = (0..3).filter(|&k| k != pivot).collect();
    let lin: Vec<[f64; 3]> = others
        .iter()
        .map(|&k| {
            let w = q[k][0] / q[pivot][0];
            [q[k][1] - w * q[pivot][1], q[k][2] - w * q[pivot][2], q[k][3] - w * q[pivot][3]]
        })
        .collect();
    let det = lin[0][0] * lin[1][1] - lin[0][1] * lin[1][0];
    if det.abs() < 1e-12 {
        return None;
    }
    let x = (-lin[0][2] * lin[1][1] + lin[0][1] * lin[1][2]) / det;
    let y = (-lin[0][0] * lin[1][2] + lin[0][2] * lin[1][0]) / det;
    let p = q[pivot];
    let r2 = -(x * x + y * y + (p[1] * x + p[2] * y + p[3]) / p[0]);
    (r2 > 0.0).then(|| H3Point::new(x, y, r2.sqrt()))
}

/// Checks that the boundary plane is covered: no point of the closed interior
/// disks escapes every open exterior disk.
fn check_compact(spheres: &[BisectorSphere]) -> Result<()> {
    let disks: Vec<&BisectorSphere> = spheres.iter().filter(|s| s.side != Side::Plane).collect();
    let covered = |x: f64, y: f64| {
        let mut inside_all_interiors = true;
        for s in &disks {
            let d2 = (x - s.center.0).powi(2) + (y - s.center.1).powi(2);
            match s.side {
                Side::Exterior if d2 < (s.radius - 1e-9).powi(2) => return true,
                Side::Interior if d2 > (s.radius + 1e-9).powi(2) => inside_all_interiors = false,
                _ => {}
            }
        }
        !inside_all_interiors
    };
    let mut candidates = Vec::new();
    for (i, s) in disks.iter().enumerate() {
        for k in 0..8 {
            let t = k as f64 * std::f64::consts::FRAC_PI_4;
            candidates.push((s.center.0 + s.radius * t.cos(), s.center.1 + s.radius * t.sin()));
        }
        for t in &disks[i + 1..] {
            let (dx, dy) = (t.center.0 - s.center.0, t.center.1 - s.center.1);
            let d = (dx * dx + dy * dy).sqrt();
            if d == 0.0 || d > s.radius + t.radius || d < (s.radius - t.radius).abs() {
                continue;
            }
            let a = (s.radius * s.radius - t.radius * t.radius + d * d) / (2.0 * d);
            let h = (s.radius * s.radius - a * a).max(0.0).sqrt();
            let (mx, my) = (s.center.0 + a * dx / d, s.center.1 + a * dy / d);
            candidates.push((mx + h * dy / d, my - h * dx / d));
            candidates.push((mx - h * dy / d, my + h * dx / d));
        }
    }
    match candidates.into_iter().find(|&(x, y)| !covered(x, y)) {
        Some((x, y)) => Err(Error::NonCompact { x, y }),
        None => Ok(()),
    }
}

fn letter_of(u: &OrderElement) -> Option<u8> {
    let neg = u.neg();
    generators().iter().position(|g| *g == *u || *g == neg).map(|k| k as u8 + 1)
}

/// Enumeration bound that captures every face of the domain.
pub const DEFAULT_BOUND: f64 = 9.0;

/// Builds the Dirichlet polyhedron from all units with `||g||_F^2 <= bound`.
pub fn build_polyhedron(bound: f64) -> Result<Polyhedron> {
    let mut units: Vec<OrderElement> = Vec::new();
    for u in enumerate_norm_bounded(bound)? {
        if u.is_plus_minus_one() || units.contains(&u.neg()) {
            continue;
        }
        units.push(u);
    }
    let spheres: Vec<BisectorSphere> = units.iter().filter_map(|u| bisector_of(u).ok()).collect();
    let spheres = prune(spheres);
    check_compact(&spheres)?;

    let n = spheres.len();
    let mut vertices: Vec<H3Point> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let Some(p) = triple_point([&spheres[i], &spheres[j], &spheres[k]]) else { continue };
                if spheres.iter().any(|s| s.margin(&p) < -INCIDENCE_TOL) {
                    continue;
                }
                if vertices.iter().all(|v| v.euclid_dist(&p) > 1e-7) {
                    vertices.push(p);
                }
            }
        }
    }

    let mut faces: Vec<(u8, BisectorSphere)> = Vec::new();
    for s in spheres {
        let incident = vertices.iter().filter(|v| s.margin(v).abs() < 1e-7).count();
        if incident >= 3 {
            let letter = letter_of(&s.unit).unwrap_or(0);
            faces.push((letter, s));
        }
    }
    faces.sort_by_key(|(l, _)| *l);
    vertices.sort_by(|a, b| (a.x, a.y, a.r).partial_cmp(&(b.x, b.y, b.r)).unwrap());
    let (letters, constraints) = faces.into_iter().unzip();
    Ok(Polyhedron { constraints, letters, vertices })
}

/// A vertex with its printed label, e.g. `V3''`.
#[derive(Debug, Clone, PartialEq)]
pub struct LabelledVertex {
    pub label: String,
    pub point: H3Point,
}

/// The 24 vertices `V_i, V_i', V_i'', V_i'''` in closed form.
///
/// `'` reflects in `y = x`, `''` in `y = -x`, `'''` in the vertical axis.
pub fn closed_form_vertices() -> Vec<LabelledVertex> {
    let s5 = 5f64.sqrt();
    let (t, tb) = (THETA, THETA_BAR);
    let base = [
        ((5.0 * s5 + 9.0) / 16.0, (3.0 * s5 - 1.0) / 16.0, (33.0 + 11.0 * s5).sqrt() / 8.0),
        ((1.0 + t) / 2.0, -0.5, t / 2.0),
        (t / 2.0, -tb / 2.0, 0.5),
        (3.0 * s5 / 20.0 + 0.5, 3.0 * s5 / 20.0 - 0.5, 0.5 * (1.1f64).sqrt()),
        ((1.0 + 3.0 * s5) / 16.0, (5.0 * s5 - 9.0) / 16.0, (33.0 - 11.0 * s5).sqrt() / 8.0),
        (0.5, -tb * tb / 2.0, -tb / 2.0),
    ];
    let maps: [(&str, fn(f64, f64) -> (f64, f64)); 4] =
        [("", |x, y| (x, y)), ("'", |x, y| (y, x)), ("''", |x, y| (-y, -x)), ("'''", |x, y| (-x, -y))];
    let mut out = Vec::with_capacity(24);
    for (primes, f) in maps {
        for (k, &(x, y, r)) in base.iter().enumerate() {
            let (x, y) = f(x, y);
            out.push(LabelledVertex { label: format!("V{}{}", k + 1, primes), point: H3Point::new(x, y, r) });
        }
    }
    out
}

/// `(cosh R_min, cosh R_max)`: extreme distances from `J` to the vertices.
pub fn ball_radii(p: &Polyhedron) -> (f64, f64) {
    p.vertices.iter().map(|v| cosh_dist(&J, v)).fold((f64::INFINITY, 0.0), |(lo, hi), d| (lo.min(d), hi.max(d)))
}

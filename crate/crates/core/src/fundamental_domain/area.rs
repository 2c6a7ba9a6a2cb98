//! Upper bound on the volume of the polyhedron by slicing a region `T` at height `r`.
//!
//! Every slice `{r = const}` of a bisector hemisphere of Euclidean radius `R` is a
//! disk of radius `sqrt(R^2 - r^2)`, so each volume below is `int A(r) / r^3 dr`
//! with `A(r)` a planar area.

use super::quad::integrate;
use crate::exact_order::{THETA, THETA_BAR};

/// Lower cut-off height of the region.
pub fn base_height() -> f64 {
    -THETA_BAR / 2.0
}

/// One term of the bound.
#[derive(Debug, Clone, PartialEq)]
pub struct AreaTerm {
    pub name: &'static str,
    pub computed: f64,
    pub expected: f64,
    pub tolerance: f64,
}

impl AreaTerm {
    pub fn ok(&self) -> bool {
        (self.computed - self.expected).abs() <= self.tolerance
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AreaBoundReport {
    pub sector: AreaTerm,
    pub lens_u2: AreaTerm,
    pub lens_u4: AreaTerm,
    pub difference_u1: AreaTerm,
    pub difference_u3: AreaTerm,
    pub total: AreaTerm,
    /// Twice the target volume; the bound must stay below it.
    pub threshold: f64,
}

impl AreaBoundReport {
    pub fn terms(&self) -> [&AreaTerm; 6] {
        [&self.sector, &self.lens_u2, &self.lens_u4, &self.difference_u1, &self.difference_u3, &self.total]
    }

    pub fn all_pass(&self) -> bool {
        self.terms().iter().all(|t| t.ok()) && self.total.computed < self.threshold
    }
}

/// Area of the intersection of two disks of radii `r1`, `r2` at centre distance `d`.
pub fn lens_area(r1: f64, r2: f64, d: f64) -> f64 {
    if r1 <= 0.0 || r2 <= 0.0 || d >= r1 + r2 {
        return 0.0;
    }
    if d <= (r1 - r2).abs() {
        let m = r1.min(r2);
        return std::f64::consts::PI * m * m;
    }
    let a1 = ((d * d + r1 * r1 - r2 * r2) / (2.0 * d * r1)).clamp(-1.0, 1.0).acos();
    let a2 = ((d * d + r2 * r2 - r1 * r1) / (2.0 * d * r2)).clamp(-1.0, 1.0).acos();
    let k = (-d + r1 + r2) * (d + r1 - r2) * (d - r1 + r2) * (d + r1 + r2);
    r1 * r1 * a1 + r2 * r2 * a2 - 0.5 * k.max(0.0).sqrt()
}

#[derive(Debug, Clone, Copy)]
struct Disk {
    cx: f64,
    cy: f64,
    radius: f64,
}

impl Disk {
    fn chord(&self, x: f64) -> Option<(f64, f64)> {
        let h2 = self.radius * self.radius - (x - self.cx) * (x - self.cx);
        (h2 > 0.0).then(|| {
            let h = h2.sqrt();
            (self.cy - h, self.cy + h)
        })
    }
}

fn slice_radius(big: f64, r: f64) -> f64 {
    (big * big - r * r).max(0.0).sqrt()
}

/// Area of `base` minus the union of `holes`, by integrating chord lengths in `x`.
fn difference_area(base: Disk, holes: &[Disk]) -> f64 {
    if base.radius <= 0.0 {
        return 0.0;
    }
    let (lo, hi) = (base.cx - base.radius, base.cx + base.radius);
    let mut breaks = Vec::new();
    for (k, h) in holes.iter().enumerate() {
        breaks.extend([h.cx - h.radius, h.cx + h.radius]);
        for other in std::iter::once(&base).chain(&holes[k + 1..]) {
            breaks.extend(circle_crossings(h, other));
        }
    }
    let length = |x: f64| {
        let Some((a, b)) = base.chord(x) else { return 0.0 };
        let mut cut: Vec<(f64, f64)> =
            holes.iter().filter_map(|h| h.chord(x)).map(|(c, d)| (c.max(a), d.min(b))).filter(|(c, d)| d > c).collect();
        cut.sort_by(|p, q| p.0.total_cmp(&q.0));
        let mut covered = 0.0;
        let mut reach = a;
        for (c, d) in cut {
            if d > reach {
                covered += d - c.max(reach);
                reach = d;
            }
        }
        (b - a) - covered
    };
    integrate(length, lo, hi, &breaks, 2, 1e-10)
}

fn circle_crossings(p: &Disk, q: &Disk) -> Vec<f64> {
    let (dx, dy) = (q.cx - p.cx, q.cy - p.cy);
    let d = dx.hypot(dy);
    if d == 0.0 || d >= p.radius + q.radius || d <= (p.radius - q.radius).abs() {
        return Vec::new();
    }
    let a = (p.radius * p.radius - q.radius * q.radius + d * d) / (2.0 * d);
    let h = (p.radius * p.radius - a * a).max(0.0).sqrt();
    let mx = p.cx + a * dx / d;
    vec![mx + h * dy / d, mx - h * dy / d]
}

fn volume<F: Fn(f64) -> f64>(area: F, top: f64, breaks: &[f64], pieces: usize) -> f64 {
    let r0 = base_height();
    integrate(|r| area(r) / (r * r * r), r0, top, breaks, pieces, 1e-10)
}

fn term(name: &'static str, computed: f64, expected: f64, tolerance: f64) -> AreaTerm {
    AreaTerm { name, computed, expected, tolerance }
}

/// Evaluates every term of the bound by quadrature.
pub fn area_bound() -> AreaBoundReport {
    let (t, tb) = (THETA, -THETA_BAR);
    let sector = volume(|r| std::f64::consts::PI * slice_radius(t, r).powi(2), t, &[], 4);

    let top_u2 = (9.0 + 3.0 * 5f64.sqrt()).sqrt() / 4.0;
    let lens_u2 = volume(|r| lens_area(slice_radius(t, r), slice_radius(1.0, r), 2f64.sqrt()), top_u2, &[], 4);

    let d4 = t * 2f64.sqrt();
    let top_u4 = (t * t - d4 * d4 / 4.0).sqrt();
    let lens_u4 = volume(|r| lens_area(slice_radius(t, r), slice_radius(t, r), d4), top_u4, &[], 4);

    let disk = |cx: f64, cy: f64, big: f64, r: f64| Disk { cx, cy, radius: slice_radius(big, r) };
    let diff_u1 = volume(
        |r| difference_area(disk(0.0, 0.0, tb, r), &[disk(1.0, -1.0, 1.0, r), disk(-1.0, 1.0, 1.0, r)]),
        tb,
        &[],
        8,
    );
    let diff_u3 = volume(
        |r| difference_area(disk(THETA_BAR, THETA_BAR, tb, r), &[disk(-t, -t, t, r), disk(0.0, 0.0, tb, r)]),
        tb,
        &[],
        8,
    );

    let total = sector - 2.0 * lens_u2 - 2.0 * lens_u4 - diff_u1 - 2.0 * diff_u3;
    AreaBoundReport {
        sector: term("sector", sector, 36.2937, 1e-3),
        lens_u2: term("T cap S(u2)", lens_u2, 5.96793, 1e-3),
        lens_u4: term("T cap S(u4)", lens_u4, 5.34536, 1e-3),
        difference_u1: term("S(u1^-1) minus S(u2), S(u2^-1)", diff_u1, 2.49982, 1e-3),
        difference_u3: term("S(u3^-1) minus S(u3), S(u1^-1)", diff_u3, 0.70490, 1e-3),
        total: term("bound", total, 9.75746, 5e-3),
        threshold: 9.77029,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lens_limits() {
        assert_eq!(lens_area(1.0, 1.0, 2.5), 0.0);
        assert!((lens_area(2.0, 1.0, 0.5) - std::f64::consts::PI).abs() < 1e-15);
        let half = lens_area(1.0, 1.0, 1e-9);
        assert!((half - std::f64::consts::PI).abs() < 1e-6);
    }

    #[test]
    fn difference_of_disjoint_disks_is_the_disk() {
        let base = Disk { cx: 0.0, cy: 0.0, radius: 1.0 };
        let far = Disk { cx: 5.0, cy: 0.0, radius: 1.0 };
        assert!((difference_area(base, &[far]) - std::f64::consts::PI).abs() < 1e-8);
        let half = Disk { cx: 1.0, cy: 0.0, radius: 1.0 };
        let expect = std::f64::consts::PI - lens_area(1.0, 1.0, 1.0);
        assert!((difference_area(base, &[half]) - expect).abs() < 1e-8);
    }

    #[test]
    fn reproduces_printed_terms() {
        let rep = area_bound();
        for t in rep.terms() {
            assert!(t.ok(), "{t:?}");
        }
        assert!(rep.all_pass());
    }
}

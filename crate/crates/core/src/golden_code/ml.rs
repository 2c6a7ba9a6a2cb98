use nalgebra::{SMatrix, SVector, QR};

use super::{Alphabet, SymbolVector};
use crate::linalg::{gauss_to_c64, GaussI64, Mat4, Vec4};

type Real8 = SMatrix<f64, 8, 8>;
type RVec8 = SVector<f64, 8>;

/// Real form: `s = (Re s, Im s)`, `G -> [[Re G, -Im G], [Im G, Re G]]`.
fn realify(g: &Mat4, y: &Vec4) -> (Real8, RVec8) {
    let mut gr = Real8::zeros();
    let mut yr = RVec8::zeros();
    for i in 0..4 {
        yr[i] = y[i].re;
        yr[i + 4] = y[i].im;
        for j in 0..4 {
            let z = g[(i, j)];
            gr[(i, j)] = z.re;
            gr[(i, j + 4)] = -z.im;
            gr[(i + 4, j)] = z.im;
            gr[(i + 4, j + 4)] = z.re;
        }
    }
    (gr, yr)
}

/// Candidate odd integers around `center` in order of increasing distance.
struct Zigzag {
    first: i64,
    dir: i64,
    k: i64,
    bound: Option<i64>,
}

impl Zigzag {
    fn new(center: f64, bound: Option<i64>) -> Self {
        let mut first = 2 * ((center - 1.0) / 2.0).round() as i64 + 1;
        if let Some(l) = bound {
            first = first.clamp(-l, l);
        }
        let dir = if center >= first as f64 { 1 } else { -1 };
        Zigzag { first, dir, k: 0, bound }
    }
}

impl Iterator for Zigzag {
    type Item = i64;

    fn next(&mut self) -> Option<i64> {
        loop {
            let k = self.k;
            self.k += 1;
            // offsets 0, +d, -d, +2d, -2d, ...
            let step = (k + 1) / 2;
            let sign = if k % 2 == 1 { self.dir } else { -self.dir };
            let v = self.first + 2 * step * sign;
            match self.bound {
                None => return Some(v),
                Some(l) => {
                    if step > l + 1 {
                        return None;
                    }
                    if v.abs() <= l {
                        return Some(v);
                    }
                }
            }
        }
    }
}

struct Search {
    r: Real8,
    z: RVec8,
    bound: Option<i64>,
    best: f64,
    best_x: [i64; 8],
    x: [i64; 8],
}

impl Search {
    fn descend(&mut self, level: usize, partial: f64) {
        let mut acc = self.z[level];
        for j in level + 1..8 {
            acc -= self.r[(level, j)] * self.x[j] as f64;
        }
        let rkk = self.r[(level, level)];
        let center = acc / rkk;
        for v in Zigzag::new(center, self.bound) {
            let e = rkk * (center - v as f64);
            let d = partial + e * e;
            if d >= self.best {
                break;
            }
            self.x[level] = v;
            if level == 0 {
                self.best = d;
                self.best_x = self.x;
            } else {
                self.descend(level - 1, d);
            }
        }
    }
}

fn sphere_decode(g: &Mat4, y: &Vec4, bound: Option<i64>) -> SymbolVector {
    let (gr, yr) = realify(g, y);
    let qr = QR::new(gr);
    let z = qr.q().transpose() * yr;
    let mut s = Search { r: qr.r(), z, bound, best: f64::INFINITY, best_x: [0; 8], x: [0; 8] };
    s.descend(7, 0.0);
    std::array::from_fn(|k| GaussI64::new(s.best_x[k], s.best_x[k + 4]))
}

/// Maximum-likelihood decision `argmin ||y - G s||^2` over the alphabet.
///
/// 4-QAM is searched exhaustively; 16-QAM by a depth-first Schnorr-Euchner
/// sphere search on the real 8-dimensional model.
pub fn ml_detect(y: &Vec4, g: &Mat4, alphabet: Alphabet) -> SymbolVector {
    match alphabet {
        Alphabet::Qam4 => ml_exhaustive(y, g, alphabet),
        Alphabet::Qam16 => sphere_decode(g, y, Some(alphabet.max_level())),
    }
}

/// Closest point of the unbounded offset lattice `G ((1 + i) + 2 Z[i]^4)`.
pub fn lattice_ml_detect(y: &Vec4, g: &Mat4) -> SymbolVector {
    sphere_decode(g, y, None)
}

/// Exhaustive search over all `M^4` symbol vectors.
pub fn ml_exhaustive(y: &Vec4, g: &Mat4, alphabet: Alphabet) -> SymbolVector {
    let pts = alphabet.points();
    let cols: Vec<Vec<Vec4>> = (0..4).map(|k| pts.iter().map(|p| g.column(k) * gauss_to_c64(*p)).collect()).collect();
    let n = pts.len();
    let mut best = (f64::INFINITY, [0usize; 4]);
    for a in 0..n {
        let ra = y - cols[0][a];
        for b in 0..n {
            let rb = ra - cols[1][b];
            for c in 0..n {
                let rc = rb - cols[2][c];
                for d in 0..n {
                    let e = (rc - cols[3][d]).norm_squared();
                    if e < best.0 {
                        best = (e, [a, b, c, d]);
                    }
                }
            }
        }
    }
    best.1.map(|k| pts[k])
}

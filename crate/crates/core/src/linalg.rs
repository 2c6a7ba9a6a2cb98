//! Small fixed-size complex matrices and exact Gaussian-integer 4x4 matrices.

use nalgebra::{Matrix2, Matrix4, Vector4};
use num_complex::Complex;

use crate::error::{Error, Result};

pub type C64 = Complex<f64>;
pub type Mat2 = Matrix2<C64>;
pub type Mat4 = Matrix4<C64>;
pub type Vec4 = Vector4<C64>;

/// Gaussian integer with machine-word parts; used for symbols and lattice transforms.
pub type GaussI64 = Complex<i64>;

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn mat2(a: C64, b: C64, c: C64, d: C64) -> Mat2 {
    Mat2::new(a, b, c, d)
}

pub fn det2(m: &Mat2) -> C64 {
    m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)]
}

/// Inverse of a 2x2 matrix; `None` when the determinant vanishes.
pub fn inv2(m: &Mat2) -> Option<Mat2> {
    let d = det2(m);
    if d.norm() == 0.0 {
        return None;
    }
    Some(Mat2::new(m[(1, 1)], -m[(0, 1)], -m[(1, 0)], m[(0, 0)]) / d)
}

/// Squared Frobenius norm.
pub fn frob_sq<R: nalgebra::Dim, Cc: nalgebra::Dim, S>(m: &nalgebra::Matrix<C64, R, Cc, S>) -> f64
where
    S: nalgebra::RawStorage<C64, R, Cc>,
{
    m.iter().map(|z| z.norm_sqr()).sum()
}

/// Matrix of `B -> A B` acting on column-major vectorisations: `blockdiag(A, A)`.
pub fn left_mult(a: &Mat2) -> Mat4 {
    let mut m = Mat4::zeros();
    for blk in 0..2 {
        for i in 0..2 {
            for j in 0..2 {
                m[(2 * blk + i, 2 * blk + j)] = a[(i, j)];
            }
        }
    }
    m
}

/// Rounds a complex number to the nearest Gaussian integer.
pub fn round_gauss(z: C64) -> GaussI64 {
    GaussI64::new(z.re.round() as i64, z.im.round() as i64)
}

pub fn gauss_to_c64(g: GaussI64) -> C64 {
    C64::new(g.re as f64, g.im as f64)
}

/// 4x4 matrix over the Gaussian integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GaussMat4(pub [[GaussI64; 4]; 4]);

impl GaussMat4 {
    pub fn zero() -> Self {
        GaussMat4([[GaussI64::new(0, 0); 4]; 4])
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for k in 0..4 {
            m.0[k][k] = GaussI64::new(1, 0);
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> GaussI64 {
        self.0[i][j]
    }

    /// Rounds a complex matrix entrywise; fails when any entry is farther than `tol`
    /// from a Gaussian integer. Returns the matrix and the worst residual.
    pub fn round_from(m: &Mat4, tol: f64) -> Result<(Self, f64)> {
        let mut out = Self::zero();
        let mut worst = 0.0f64;
        for i in 0..4 {
            for j in 0..4 {
                let z = m[(i, j)];
                let g = round_gauss(z);
                worst = worst.max((z - gauss_to_c64(g)).norm());
                out.0[i][j] = g;
            }
        }
        if !(worst <= tol) {
            return Err(Error::Precision(worst));
        }
        Ok((out, worst))
    }

    pub fn to_mat4(&self) -> Mat4 {
        Mat4::from_fn(|i, j| gauss_to_c64(self.0[i][j]))
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for i in 0..4 {
            for j in 0..4 {
                let mut acc = GaussI64::new(0, 0);
                for k in 0..4 {
                    acc += self.0[i][k] * rhs.0[k][j];
                }
                out.0[i][j] = acc;
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[GaussI64; 4]) -> [GaussI64; 4] {
        let mut out = [GaussI64::new(0, 0); 4];
        for (i, o) in out.iter_mut().enumerate() {
            for (k, vk) in v.iter().enumerate() {
                *o += self.0[i][k] * vk;
            }
        }
        out
    }

    fn wide(&self) -> [[Complex<i128>; 4]; 4] {
        let mut w = [[Complex::<i128>::new(0, 0); 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                w[i][j] = Complex::new(self.0[i][j].re as i128, self.0[i][j].im as i128);
            }
        }
        w
    }

    /// Exact determinant by cofactor expansion in 128-bit arithmetic.
    pub fn det(&self) -> Complex<i128> {
        let w = self.wide();
        let mut total = Complex::new(0, 0);
        for (col, sign) in [(0usize, 1i128), (1, -1), (2, 1), (3, -1)] {
            total += w[0][col] * minor3(&w, 0, col) * sign;
        }
        total
    }

    /// Determinant in `{1, -1, i, -i}`.
    pub fn is_unimodular(&self) -> bool {
        let d = self.det();
        d.re.abs() + d.im.abs() == 1
    }

    /// Exact inverse via the adjugate; `None` unless the matrix is unimodular.
    pub fn inverse(&self) -> Option<Self> {
        let d = self.det();
        if d.re.abs() + d.im.abs() != 1 {
            return None;
        }
        // 1/d = conj(d) for a Gaussian unit
        let dinv = d.conj();
        let w = self.wide();
        let mut out = Self::zero();
        for i in 0..4 {
            for j in 0..4 {
                let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                // adj[i][j] = cofactor[j][i]
                let v = minor3(&w, j, i) * sign * dinv;
                out.0[i][j] = GaussI64::new(i64::try_from(v.re).ok()?, i64::try_from(v.im).ok()?);
            }
        }
        Some(out)
    }
}

fn minor3(w: &[[Complex<i128>; 4]; 4], skip_r: usize, skip_c: usize) -> Complex<i128> {
    let rows: Vec<usize> = (0..4).filter(|&r| r != skip_r).collect();
    let cols: Vec<usize> = (0..4).filter(|&c| c != skip_c).collect();
    let m = |i: usize, j: usize| w[rows[i]][cols[j]];
    m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
        + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0))
}

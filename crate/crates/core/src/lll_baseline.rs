//! Complex LLL reduction over `Z[i]`.

use crate::error::{Error, Result};
use crate::linalg::{gauss_to_c64, round_gauss, GaussI64, GaussMat4, Mat4, C64};

/// Default Lovasz parameter.
pub const DEFAULT_DELTA: f64 = 0.99;

#[derive(Debug, Clone)]
pub struct LllResult {
    /// `B' = B T`
    pub basis: Mat4,
    pub t: GaussMat4,
    pub t_inv: GaussMat4,
    /// Number of column swaps performed.
    pub swaps: usize,
}

struct Gso {
    bstar: Mat4,
    norms: [f64; 4],
}

fn gram_schmidt(b: &Mat4) -> Gso {
    let mut bstar = *b;
    let mut norms = [0.0; 4];
    for k in 0..4 {
        let mut v = b.column(k).into_owned();
        for j in 0..k {
            let mu = bstar.column(j).dotc(&b.column(k)) / norms[j];
            v -= bstar.column(j) * mu;
        }
        norms[k] = v.norm_squared();
        bstar.set_column(k, &v);
    }
    Gso { bstar, norms }
}

fn mu(g: &Gso, b: &Mat4, k: usize, j: usize) -> C64 {
    g.bstar.column(j).dotc(&b.column(k)) / g.norms[j]
}

/// Reduces the columns of `b` with Lovasz parameter `delta` in `(1/2, 1]`.
pub fn lll_reduce(b: &Mat4, delta: f64) -> Result<LllResult> {
    assert!(delta > 0.5 && delta <= 1.0, "delta must lie in (1/2, 1]");
    let scale = b.norm_squared().max(f64::MIN_POSITIVE);
    let mut basis = *b;
    let mut t = GaussMat4::identity();
    let mut t_inv = GaussMat4::identity();
    let mut swaps = 0usize;
    let mut g = gram_schmidt(&basis);
    if g.norms.iter().any(|&n| n <= 1e-24 * scale) {
        return Err(Error::RankDeficient);
    }
    let mut k = 1;
    while k < 4 {
        for j in (0..k).rev() {
            let q = round_gauss(mu(&g, &basis, k, j));
            if q != GaussI64::new(0, 0) {
                let col = basis.column(j) * gauss_to_c64(q);
                let mut bk = basis.column_mut(k);
                bk -= col;
                for row in 0..4 {
                    t.0[row][k] -= q * t.0[row][j];
                    t_inv.0[j][row] += q * t_inv.0[k][row];
                }
            }
        }
        let m = mu(&g, &basis, k, k - 1);
        if g.norms[k] >= (delta - m.norm_sqr()) * g.norms[k - 1] {
            k += 1;
        } else {
            basis.swap_columns(k, k - 1);
            for row in 0..4 {
                t.0[row].swap(k, k - 1);
            }
            t_inv.0.swap(k, k - 1);
            swaps += 1;
            g = gram_schmidt(&basis);
            k = (k - 1).max(1);
        }
    }
    Ok(LllResult { basis, t, t_inv, swaps })
}

/// Checks size reduction and the Lovasz condition with a small slack.
pub fn is_lll_reduced(b: &Mat4, delta: f64) -> bool {
    let g = gram_schmidt(b);
    for k in 1..4 {
        for j in 0..k {
            let m = mu(&g, b, k, j);
            if m.re.abs() > 0.5 + 1e-9 || m.im.abs() > 0.5 + 1e-9 {
                return false;
            }
        }
        let m = mu(&g, b, k, k - 1);
        if g.norms[k] < (delta - m.norm_sqr()) * g.norms[k - 1] * (1.0 - 1e-9) {
            return false;
        }
    }
    true
}

//! Approximation of a normalized channel by a unit of the order.
//!
//! Writing `H1 = E U` with `U` a unit, the best `U` minimizes `||U H1^-1||_F^2 =
//! 2 cosh rho(J, U H1^-1 (J))`. The search walks from `H1^-1(J)` towards `J` across
//! the tiling of hyperbolic space by images of the Dirichlet polyhedron, moving
//! through whichever face brings the point strictly closer to `J`. Since the
//! polyhedron is cut out exactly by the sixteen generator half-spaces, the walk
//! stops inside it and the result is a global minimizer.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::exact_order::{generators, OrderElement, UnitWord};
use crate::golden_code::LatticeBasis;
use crate::hyperbolic::{act, act_inverse, cosh_dist, H3Point, J};
use crate::linalg::{det2, left_mult, GaussI64, GaussMat4, Mat2, C64};

/// Default iteration cap for [`reduce`].
pub const DEFAULT_MAX_STEPS: usize = 64;

/// Relative tolerance under which two distances are treated as tied.
pub const TIE_TOL: f64 = 1e-12;

/// Maximum rounding residual accepted by [`compute_t`].
pub const T_ROUNDING_TOL: f64 = 1e-6;

#[derive(Debug, Clone)]
pub struct GeneratorEntry {
    pub letter: u8,
    pub exact: OrderElement,
    pub matrix: Mat2,
    /// `u(J)`
    pub image: H3Point,
}

/// The sixteen generators and inverses with their images of `J`.
#[derive(Debug, Clone)]
pub struct GeneratorTable {
    entries: Vec<GeneratorEntry>,
}

impl GeneratorTable {
    pub fn new() -> Self {
        let entries = generators()
            .iter()
            .enumerate()
            .map(|(k, u)| {
                let matrix = u.embed();
                GeneratorEntry { letter: k as u8 + 1, exact: u.clone(), matrix, image: act(&matrix, &J) }
            })
            .collect();
        GeneratorTable { entries }
    }

    /// Process-wide shared table.
    pub fn shared() -> &'static Self {
        static TABLE: OnceLock<GeneratorTable> = OnceLock::new();
        TABLE.get_or_init(GeneratorTable::new)
    }

    pub fn entries(&self) -> &[GeneratorEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl Default for GeneratorTable {
    fn default() -> Self {
        Self::new()
    }
}

/// Output of [`reduce`].
#[derive(Debug, Clone)]
pub struct ReductionResult {
    pub unit_exact: OrderElement,
    pub unit_numeric: Mat2,
    pub word: UnitWord,
    pub t: GaussMat4,
    /// Residual channel `E = H1 U^-1`.
    pub e: Mat2,
    pub steps: usize,
    /// `cosh rho(h^-1(J), J)` at the start of each iteration.
    pub trace: Vec<f64>,
}

/// Factors `H = sqrt(det H) H1` with `H1` of determinant one (principal root).
pub fn normalize_channel(h: &Mat2) -> Result<(Mat2, C64)> {
    let det = det2(h);
    if det.norm() <= 1e-12 {
        return Err(Error::SingularChannel(det.norm()));
    }
    Ok((h / det.sqrt(), det))
}

/// Tile walk for a determinant-one `h1`.
pub fn reduce(h1: &Mat2, table: &GeneratorTable, max_steps: usize) -> Result<ReductionResult> {
    let mut h = *h1;
    let mut letters: Vec<u8> = Vec::new();
    let mut trace = Vec::new();
    let mut steps = 0;
    loop {
        if steps == max_steps {
            return Err(Error::NonTermination(max_steps));
        }
        steps += 1;
        let p = act_inverse(&h, &J);
        let d0 = cosh_dist(&p, &J);
        trace.push(d0);
        let mut best = d0;
        let mut pick = None;
        for entry in table.entries() {
            let d = cosh_dist(&p, &entry.image);
            if d < best * (1.0 - TIE_TOL) {
                best = d;
                pick = Some(entry);
            }
        }
        match pick {
            None => break,
            Some(entry) => {
                h *= entry.matrix;
                letters.push(entry.letter);
            }
        }
    }
    let walked = UnitWord { letters };
    let word = walked.inverse();
    let unit_exact = word.eval();
    let unit_numeric = unit_exact.embed();
    let e = h1 * walked.eval().embed();
    Ok(ReductionResult { t: compute_t_exact(&unit_exact), unit_exact, unit_numeric, word, e, steps, trace })
}

/// `T_U = Phi^-1 U_l Phi`, rounded to Gaussian integers.
pub fn compute_t(u: &OrderElement, basis: &LatticeBasis) -> Result<GaussMat4> {
    let norm = u.reduced_norm();
    if !norm.is_one() {
        return Err(Error::NotAUnit(norm.to_string()));
    }
    let m = basis.phi_inv * left_mult(&u.embed()) * basis.phi;
    let (t, _) = GaussMat4::round_from(&m, T_ROUNDING_TOL)?;
    Ok(t)
}

/// Exact `T_U`: the matrix of left multiplication by `alpha^-1 u alpha` in the
/// basis `{1, theta, j, theta j}`. Since `sigma(alpha) = i theta alpha`, for
/// `u = x1 + x2 j` this is `x1 + i theta x2 j`.
pub fn compute_t_exact(u: &OrderElement) -> GaussMat4 {
    let it = crate::exact_order::RingElem::theta().mul_i();
    let v = OrderElement::new(u.x1.clone(), u.x2.mul(&it));
    let mut t = GaussMat4::zero();
    for k in 0..4 {
        let mut c = [(0, 0); 4];
        c[k] = (1, 0);
        let col = v.mul(&OrderElement::from_small(c)).coefficients();
        for (row, g) in col.iter().enumerate() {
            let (re, im) = g.to_i64_pair().expect("coefficient fits in i64");
            t.0[row][k] = GaussI64::new(re, im);
        }
    }
    t
}

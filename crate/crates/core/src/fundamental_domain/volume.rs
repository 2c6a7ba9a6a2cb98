//! Monte-Carlo hyperbolic volume `int dx dy dr / r^3` of the polyhedron.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::Polyhedron;
use crate::error::{Error, Result};
use crate::hyperbolic::H3Point;

/// Exact covolume `32 zeta_{Q(i)}(2) / pi^2` of the unit group.
pub const TARGET_VOLUME: f64 = 4.885149838;

/// Sampling box `[-1.4, 1.4]^2 x [0.25, 1.70]`.
pub const BOX_XY: f64 = 1.4;
pub const BOX_R: (f64, f64) = (0.25, 1.70);

/// Accepted samples closer than this to the box wall count as a violation.
const WALL: f64 = 1e-3;

const CHUNK: usize = 1 << 16;

pub const MIN_SAMPLES: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VolumeEstimate {
    pub estimate: f64,
    pub stderr: f64,
    pub samples: usize,
}

#[derive(Default, Clone, Copy)]
struct Acc {
    sum: f64,
    sum_sq: f64,
    wall_hit: bool,
}

fn chunk_seed(seed: u64, chunk: u64) -> u64 {
    seed ^ chunk.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

fn near_wall(p: &H3Point) -> bool {
    BOX_XY - p.x.abs() < WALL || BOX_XY - p.y.abs() < WALL || p.r - BOX_R.0 < WALL || BOX_R.1 - p.r < WALL
}

fn run_chunk(poly: &Polyhedron, seed: u64, chunk: u64, n: usize) -> Acc {
    let mut rng = ChaCha8Rng::seed_from_u64(chunk_seed(seed, chunk));
    let mut acc = Acc::default();
    for _ in 0..n {
        let p = H3Point::new(
            rng.random_range(-BOX_XY..BOX_XY),
            rng.random_range(-BOX_XY..BOX_XY),
            rng.random_range(BOX_R.0..BOX_R.1),
        );
        if poly.contains(&p) {
            let w = 1.0 / (p.r * p.r * p.r);
            acc.sum += w;
            acc.sum_sq += w * w;
            acc.wall_hit |= near_wall(&p);
        }
    }
    acc
}

/// Estimates the hyperbolic volume of `poly` from `samples` uniform box draws.
///
/// Chunks carry their own seeds, so the result does not depend on the thread count.
pub fn volume_mc(poly: &Polyhedron, samples: usize, seed: u64) -> Result<VolumeEstimate> {
    if samples < MIN_SAMPLES {
        return Err(Error::InvalidConfig(format!("volume_mc needs at least {MIN_SAMPLES} samples, got {samples}")));
    }
    let chunks = samples.div_ceil(CHUNK);
    let parts: Vec<Acc> = (0..chunks)
        .into_par_iter()
        .map(|k| {
            let n = CHUNK.min(samples - k * CHUNK);
            run_chunk(poly, seed, k as u64, n)
        })
        .collect();
    let total = parts.iter().fold(Acc::default(), |a, b| Acc {
        sum: a.sum + b.sum,
        sum_sq: a.sum_sq + b.sum_sq,
        wall_hit: a.wall_hit || b.wall_hit,
    });
    if total.wall_hit || poly.vertices.iter().any(near_wall) {
        return Err(Error::BoxViolation);
    }
    let box_vol = (2.0 * BOX_XY).powi(2) * (BOX_R.1 - BOX_R.0);
    let n = samples as f64;
    let mean = total.sum / n;
    let var = (total.sum_sq / n - mean * mean).max(0.0) * n / (n - 1.0);
    Ok(VolumeEstimate { estimate: box_vol * mean, stderr: box_vol * (var / n).sqrt(), samples })
}

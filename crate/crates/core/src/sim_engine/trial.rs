use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::{Detector, Scheme};
use crate::error::Result;
use crate::golden_code::{
    devectorize, ml_detect, mmse_gdfe_preprocess, symbols_to_vec, vectorize, Alphabet, LatticeBasis, LinearDetector,
};
use crate::linalg::{det2, left_mult, Mat2, Mat4, Vec4, C64};
use crate::lll_baseline::{lll_reduce, DEFAULT_DELTA};
use crate::unit_search::{normalize_channel, reduce, GeneratorTable, DEFAULT_MAX_STEPS};

const SINGULAR: f64 = 1e-12;

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of one trial, a hash of its coordinates in the sweep.
pub fn trial_seed(seed: u64, scheme: u64, snr_index: u64, trial: u64) -> u64 {
    [scheme, snr_index, trial].iter().fold(splitmix(seed), |h, &x| splitmix(h ^ splitmix(x)))
}

fn cn<R: Rng + ?Sized>(rng: &mut R, variance: f64) -> C64 {
    let s = (variance / 2.0).sqrt();
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re * s, im * s)
}

/// 2x2 matrix of i.i.d. `CN(0, 1)` entries.
pub fn sample_channel<R: Rng + ?Sized>(rng: &mut R) -> Mat2 {
    Mat2::from_fn(|_, _| cn(rng, 1.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrialOutcome {
    pub error: bool,
    pub steps: usize,
    pub resampled: u32,
}

/// One scheme at one SNR.
#[derive(Debug, Clone)]
pub struct Trial {
    pub alphabet: Alphabet,
    pub scheme: Scheme,
    pub snr: f64,
    pub n0: f64,
    basis: LatticeBasis,
}

impl Trial {
    pub fn new(alphabet: Alphabet, scheme: Scheme, snr_db: f64) -> Self {
        let snr = 10f64.powf(snr_db / 10.0);
        Trial { alphabet, scheme, snr, n0: alphabet.energy() / snr, basis: LatticeBasis::golden() }
    }

    pub fn run_seeded(&self, seed: u64) -> Result<TrialOutcome> {
        self.run(&mut ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn run<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<TrialOutcome> {
        let mut resampled = 0;
        let h = loop {
            let h = sample_channel(rng);
            if det2(&h).norm() > SINGULAR {
                break h;
            }
            resampled += 1;
        };
        let s = self.alphabet.random_vector(rng);
        let x = devectorize(&(self.basis.phi * symbols_to_vec(&s)));
        let w = Mat2::from_fn(|_, _| cn(rng, self.n0));
        let y = h * x + w;
        let (s_hat, steps) = self.detect(&h, &y)?;
        Ok(TrialOutcome { error: s_hat != s, steps, resampled })
    }

    fn detect(&self, h: &Mat2, y: &Mat2) -> Result<(crate::golden_code::SymbolVector, usize)> {
        if self.scheme.detector == Detector::Ml {
            let g = left_mult(h) * self.basis.phi;
            return Ok((ml_detect(&vectorize(y), &g, self.alphabet), 0));
        }
        let (chan, yv): (Mat2, Vec4) = if self.scheme.mmse {
            let (f, r) = mmse_gdfe_preprocess(h, self.snr);
            (r, vectorize(&(f * y)))
        } else {
            (*h, vectorize(y))
        };
        let (det, steps) = if self.scheme.detector.is_algebraic() {
            let (h1, d) = normalize_channel(&chan)?;
            let red = reduce(&h1, GeneratorTable::shared(), DEFAULT_MAX_STEPS)?;
            let g: Mat4 = left_mult(&(red.e * d.sqrt())) * self.basis.phi;
            (LinearDetector::new(&g, &red.t)?, red.steps)
        } else {
            let l = lll_reduce(&(left_mult(&chan) * self.basis.phi), DEFAULT_DELTA)?;
            (LinearDetector::new(&l.basis, &l.t_inv)?, l.swaps)
        };
        let s_hat = match self.scheme.detector {
            Detector::ArZf | Detector::LllZf => det.zf(&yv, self.alphabet),
            _ => det.zfdfe(&yv, self.alphabet),
        };
        Ok((s_hat, steps))
    }
}

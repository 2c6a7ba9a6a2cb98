use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use super::trial::{sample_channel, trial_seed};
use crate::error::{Error, Result};
use crate::fundamental_domain::{ball_radii, build_polyhedron, integrate, DEFAULT_BOUND};
use crate::linalg::{det2, frob_sq};
use crate::unit_search::{normalize_channel, reduce, GeneratorTable, DEFAULT_MAX_STEPS};

/// Smallest trial count accepted by [`step_stats`] and [`distribution_checks`].
pub const MIN_TRIALS: usize = 100_000;

/// Scheme slot used for step-statistics seeds, outside the sweep's ten schemes.
const STEP_STREAM: u64 = 1 << 32;

/// Density `12 sqrt(t^2 - 4) / t^4` of `T = ||H||_F^2 / |det H|` on `t > 2`.
pub fn t_density(t: f64) -> f64 {
    if t <= 2.0 {
        return 0.0;
    }
    12.0 * (t * t - 4.0).sqrt() / t.powi(4)
}

/// `P(T <= t) = (1 - 4/t^2)^(3/2)`.
pub fn t_cdf(t: f64) -> f64 {
    if t <= 2.0 {
        return 0.0;
    }
    (1.0 - 4.0 / (t * t)).powf(1.5)
}

/// Density `z^2 K_1(z) / 2` of `Z = 2 |det H|`, evaluated as
/// `(z/4) int_0^inf exp(-z^2/(2u) - u/2) du`.
pub fn z_density(z: f64) -> f64 {
    if z <= 0.0 {
        return 0.0;
    }
    let f = |u: f64| if u <= 0.0 { 0.0 } else { (-z * z / (2.0 * u) - u / 2.0).exp() };
    let peak = z.max(1e-3);
    let body = integrate(f, 0.0, peak, &[], 4, 1e-12);
    let tail = integrate_tail(f, peak);
    z / 4.0 * (body + tail)
}

fn integrate_tail<F: Fn(f64) -> f64>(f: F, a: f64) -> f64 {
    let edges = [a, a + 2.0, a + 8.0, a + 24.0, a + 60.0, a + 120.0];
    edges.windows(2).map(|w| integrate(&f, w[0], w[1], &[], 2, 1e-12)).sum()
}

fn z_cdf(z: f64) -> f64 {
    if z <= 0.0 {
        return 0.0;
    }
    integrate(z_density, 0.0, z, &[], 2, 1e-10)
}

/// Pearson goodness-of-fit result.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChiSquare {
    pub statistic: f64,
    pub df: usize,
    pub p_value: f64,
}

/// Tests `samples` against `cdf` on the bins cut by `edges` plus the two tails;
/// adjacent bins are merged until each expects at least 5 samples.
pub fn chi_square_test<F: Fn(f64) -> f64>(samples: &[f64], edges: &[f64], cdf: F) -> ChiSquare {
    let n = samples.len() as f64;
    let mut probs = Vec::with_capacity(edges.len() + 1);
    let mut prev = 0.0;
    for &e in edges {
        let c = cdf(e);
        probs.push(c - prev);
        prev = c;
    }
    probs.push(1.0 - prev);
    let mut counts = vec![0u64; probs.len()];
    for &x in samples {
        counts[edges.partition_point(|&e| e < x)] += 1;
    }
    let mut merged: Vec<(f64, u64)> = Vec::new();
    let mut acc = (0.0, 0u64);
    for (p, c) in probs.into_iter().zip(counts) {
        acc = (acc.0 + p, acc.1 + c);
        if acc.0 * n >= 5.0 {
            merged.push(acc);
            acc = (0.0, 0);
        }
    }
    if let Some(last) = merged.last_mut() {
        last.0 += acc.0;
        last.1 += acc.1;
    }
    let statistic = merged.iter().map(|&(p, c)| (c as f64 - p * n).powi(2) / (p * n)).sum();
    let df = merged.len().saturating_sub(1).max(1);
    let p_value = ChiSquared::new(df as f64).map(|d| d.sf(statistic)).unwrap_or(f64::NAN);
    ChiSquare { statistic, df, p_value }
}

/// Distribution of the tile-walk length over Rayleigh channels.
#[derive(Debug, Clone, PartialEq)]
pub struct StepStats {
    pub trials: usize,
    /// `histogram[k]` counts channels needing `k` iterations.
    pub histogram: Vec<u64>,
    pub mean: f64,
    /// Largest and mean `||E||_F^2` of the residual channel.
    pub max_residual: f64,
    pub mean_residual: f64,
}

impl StepStats {
    pub fn probability(&self, steps: usize) -> f64 {
        self.histogram.get(steps).copied().unwrap_or(0) as f64 / self.trials as f64
    }

    /// Number of channels needing more than `steps` iterations.
    pub fn count_above(&self, steps: usize) -> u64 {
        self.histogram.iter().skip(steps + 1).sum()
    }
}

/// Runs the tile walk on `n_trials` normalized Rayleigh channels.
pub fn step_stats(n_trials: usize, seed: u64) -> Result<StepStats> {
    if n_trials < MIN_TRIALS {
        return Err(Error::InvalidConfig(format!("step statistics need at least {MIN_TRIALS} trials")));
    }
    let table = GeneratorTable::shared();
    let runs: Vec<(usize, f64)> = (0..n_trials as u64)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(seed, STEP_STREAM, 0, k));
            let h1 = loop {
                if let Ok((h1, _)) = normalize_channel(&sample_channel(&mut rng)) {
                    break h1;
                }
            };
            let r = reduce(&h1, table, DEFAULT_MAX_STEPS)?;
            Ok((r.steps, frob_sq(&r.e)))
        })
        .collect::<Result<_>>()?;
    let mut histogram = Vec::new();
    let (mut total, mut res_sum, mut res_max) = (0usize, 0.0, 0.0f64);
    for &(s, e) in &runs {
        if histogram.len() <= s {
            histogram.resize(s + 1, 0);
        }
        histogram[s] += 1;
        total += s;
        res_sum += e;
        res_max = res_max.max(e);
    }
    let n = n_trials as f64;
    Ok(StepStats {
        trials: n_trials,
        histogram,
        mean: total as f64 / n,
        max_residual: res_max,
        mean_residual: res_sum / n,
    })
}

/// Empirical checks of the channel statistics behind the complexity analysis.
#[derive(Debug, Clone, PartialEq)]
pub struct DistributionReport {
    pub samples: usize,
    pub t_fit: ChiSquare,
    pub z_fit: ChiSquare,
    /// Quadrature of the two densities over their supports.
    pub t_normalization: f64,
    pub z_normalization: f64,
    pub t_mean_empirical: f64,
    pub t_mean_analytic: f64,
    pub cosh_r_min: f64,
    /// Fraction of channels with `rho(J, h1^-1(J)) > R_min`.
    pub p_beyond_r_min: f64,
    /// Channels with `2 cosh rho > 2 cosh(5 R_min)`.
    pub beyond_five_r_min: u64,
}

impl DistributionReport {
    pub fn fits_pass(&self) -> bool {
        self.t_fit.p_value > 0.01 && self.z_fit.p_value > 0.01
    }

    pub fn normalizations_pass(&self) -> bool {
        (self.t_normalization - 1.0).abs() <= 1e-8 && (self.z_normalization - 1.0).abs() <= 1e-8
    }

    pub fn mean_pass(&self) -> bool {
        (self.t_mean_empirical / self.t_mean_analytic - 1.0).abs() <= 0.02
    }

    pub fn beyond_r_min_pass(&self) -> bool {
        (0.030..=0.046).contains(&self.p_beyond_r_min)
    }

    pub fn five_r_min_pass(&self) -> bool {
        self.beyond_five_r_min == 0
    }
}

/// `int_2^inf g(t) t_density(t) dt`, split where the tail flattens.
fn t_moment<G: Fn(f64) -> f64>(g: G) -> f64 {
    let f = |t: f64| g(t) * t_density(t);
    let near = integrate(f, 2.0, 20.0, &[2.5, 4.0, 8.0], 4, 1e-13);
    let far = integrate(
        |x: f64| {
            let v = f(20.0 / x) * 20.0 / (x * x);
            if v.is_finite() {
                v
            } else {
                0.0
            }
        },
        0.0,
        1.0,
        &[],
        4,
        1e-13,
    );
    near + far
}

/// Samples `n` Rayleigh channels and compares `T`, `Z` and the walk radius with theory.
pub fn distribution_checks(n: usize, seed: u64) -> Result<DistributionReport> {
    if n < MIN_TRIALS {
        return Err(Error::InvalidConfig(format!("distribution checks need at least {MIN_TRIALS} samples")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ts = Vec::with_capacity(n);
    let mut zs = Vec::with_capacity(n);
    while ts.len() < n {
        let h = sample_channel(&mut rng);
        let d = det2(&h).norm();
        if d <= 1e-12 {
            continue;
        }
        ts.push(frob_sq(&h) / d);
        zs.push(2.0 * d);
    }

    let mut t_edges: Vec<f64> =
        (1..40).map(|k| 2.0 / (1.0 - (k as f64 / 40.0).powf(2.0 / 3.0)).sqrt()).filter(|&t| t < 20.0).collect();
    t_edges.insert(0, 2.0);
    t_edges.push(20.0);
    let t_fit = chi_square_test(&ts, &t_edges, t_cdf);
    let z_edges: Vec<f64> = (0..=32).map(|k| k as f64 * 0.25).collect();
    let z_fit = chi_square_test(&zs, &z_edges, z_cdf);

    let z_normalization = integrate(z_density, 0.0, 1.0, &[], 2, 1e-12) + integrate_tail(z_density, 1.0);
    let t_normalization = t_moment(|_| 1.0);
    let t_mean_analytic = t_moment(|t| t);

    let poly = build_polyhedron(DEFAULT_BOUND)?;
    let (cosh_r_min, _) = ball_radii(&poly);
    let cosh_five = (5.0 * cosh_r_min.acosh()).cosh();
    let beyond = ts.iter().filter(|&&t| t / 2.0 > cosh_r_min).count();
    let beyond_five = ts.iter().filter(|&&t| t > 2.0 * cosh_five).count() as u64;

    Ok(DistributionReport {
        samples: n,
        t_fit,
        z_fit,
        t_normalization,
        z_normalization,
        t_mean_empirical: ts.iter().sum::<f64>() / n as f64,
        t_mean_analytic,
        cosh_r_min,
        p_beyond_r_min: beyond as f64 / n as f64,
        beyond_five_r_min: beyond_five,
    })
}

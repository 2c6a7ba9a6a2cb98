//! Monte-Carlo frame-error harness over i.i.d. Rayleigh 2x2 channels.
//!
//! The model per frame is `Y = H X + W` with `X` a Golden codeword, `H` and `W`
//! with i.i.d. `CN(0, 1)` and `CN(0, N0)` entries, and `snr = E_av / N0`.

mod analysis;
mod csv;
mod stats;
mod trial;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

pub use analysis::{diversity_slope, snr_at_fer};
pub use csv::{format_sig, write_fer_csv, write_step_csv};
pub use stats::{
    chi_square_test, distribution_checks, step_stats, t_cdf, t_density, z_density, ChiSquare, DistributionReport,
    StepStats,
};
pub use trial::{sample_channel, trial_seed, Trial, TrialOutcome};

use crate::error::{Error, Result};
use crate::golden_code::Alphabet;

/// Right preprocessing and detector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Detector {
    ArZf,
    ArZfdfe,
    LllZf,
    LllZfdfe,
    Ml,
}

impl Detector {
    pub const ALL: [Detector; 5] =
        [Detector::ArZf, Detector::ArZfdfe, Detector::LllZf, Detector::LllZfdfe, Detector::Ml];

    pub fn name(self) -> &'static str {
        match self {
            Detector::ArZf => "AR-ZF",
            Detector::ArZfdfe => "AR-ZFDFE",
            Detector::LllZf => "LLL-ZF",
            Detector::LllZfdfe => "LLL-ZFDFE",
            Detector::Ml => "ML",
        }
    }

    pub fn is_algebraic(self) -> bool {
        matches!(self, Detector::ArZf | Detector::ArZfdfe)
    }
}

/// A detector with or without MMSE-GDFE left preprocessing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scheme {
    pub detector: Detector,
    pub mmse: bool,
}

impl Scheme {
    pub const fn plain(detector: Detector) -> Self {
        Scheme { detector, mmse: false }
    }

    pub const fn mmse(detector: Detector) -> Self {
        Scheme { detector, mmse: true }
    }

    /// Position among all ten schemes; part of every trial seed.
    pub fn id(self) -> u64 {
        let d = Detector::ALL.iter().position(|&x| x == self.detector).unwrap_or(0) as u64;
        2 * d + self.mmse as u64
    }

    pub fn all() -> Vec<Scheme> {
        Detector::ALL.iter().flat_map(|&d| [Scheme::plain(d), Scheme::mmse(d)]).collect()
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.detector.name())?;
        if self.mmse {
            f.write_str("+MMSE")?;
        }
        Ok(())
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (base, mmse) = match s.strip_suffix("+MMSE") {
            Some(b) => (b, true),
            None => (s, false),
        };
        Detector::ALL
            .iter()
            .find(|d| d.name().eq_ignore_ascii_case(base))
            .map(|&detector| Scheme { detector, mmse })
            .ok_or_else(|| {
                Error::InvalidConfig(format!(
                    "unknown scheme '{s}' (expected one of AR-ZF, AR-ZFDFE, LLL-ZF, LLL-ZFDFE, ML, optionally suffixed +MMSE)"
                ))
            })
    }
}

/// Sweep parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    pub alphabet: Alphabet,
    pub schemes: Vec<Scheme>,
    pub snr_grid_db: Vec<f64>,
    /// Frame budget per point.
    pub frames_per_point: u64,
    pub seed: u64,
    /// A point stops after the first batch that brings its error count to this; 0 disables.
    pub min_errors: u64,
}

pub const MIN_FRAMES_PER_POINT: u64 = 1000;
pub const DEFAULT_MIN_ERRORS: u64 = 200;
pub const BATCH: u64 = 1024;

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            alphabet: Alphabet::Qam4,
            schemes: vec![Scheme::plain(Detector::ArZf), Scheme::plain(Detector::Ml)],
            snr_grid_db: (0..=20).step_by(2).map(f64::from).collect(),
            frames_per_point: 100_000,
            seed: 1,
            min_errors: DEFAULT_MIN_ERRORS,
        }
    }
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidConfig(m));
        if self.schemes.is_empty() {
            return bad("no schemes selected".into());
        }
        if self.snr_grid_db.is_empty() {
            return bad("snr grid is empty".into());
        }
        if self.snr_grid_db.iter().any(|x| !x.is_finite()) {
            return bad("snr grid contains a non-finite value".into());
        }
        if self.snr_grid_db.windows(2).any(|w| w[1] <= w[0]) {
            return bad("snr grid must be strictly increasing".into());
        }
        if self.frames_per_point < MIN_FRAMES_PER_POINT {
            return bad(format!("frames_per_point must be at least {MIN_FRAMES_PER_POINT}"));
        }
        Ok(())
    }
}

/// Result for one scheme at one SNR.
#[derive(Debug, Clone, PartialEq)]
pub struct FERRecord {
    pub scheme: Scheme,
    pub snr_db: f64,
    pub frames: u64,
    pub frame_errors: u64,
    pub fer: f64,
    /// Mean tile-walk iterations for algebraic schemes, mean LLL swaps for LLL
    /// schemes, 0 for ML.
    pub mean_steps: f64,
    /// `step_histogram[k]` counts frames with `k` steps (or swaps).
    pub step_histogram: Vec<u64>,
    /// Singular channel draws replaced by a fresh draw.
    pub resampled: u64,
}

impl FERRecord {
    /// Binomial standard error of `fer`.
    pub fn stderr(&self) -> f64 {
        if self.frames == 0 {
            return 0.0;
        }
        (self.fer * (1.0 - self.fer) / self.frames as f64).sqrt()
    }
}

#[derive(Default)]
struct Tally {
    frames: u64,
    errors: u64,
    steps: u64,
    resampled: u64,
    histogram: Vec<u64>,
}

impl Tally {
    fn add(&mut self, o: &TrialOutcome) {
        self.frames += 1;
        self.errors += o.error as u64;
        self.steps += o.steps as u64;
        self.resampled += o.resampled as u64;
        if self.histogram.len() <= o.steps {
            self.histogram.resize(o.steps + 1, 0);
        }
        self.histogram[o.steps] += 1;
    }
}

/// Simulates one point.
pub fn run_point(config: &SimConfig, scheme: Scheme, snr_index: usize) -> Result<FERRecord> {
    let snr_db = config.snr_grid_db[snr_index];
    let trial = Trial::new(config.alphabet, scheme, snr_db);
    let mut tally = Tally::default();
    while tally.frames < config.frames_per_point {
        let start = tally.frames;
        let end = (start + BATCH).min(config.frames_per_point);
        let outcomes: Vec<TrialOutcome> = (start..end)
            .into_par_iter()
            .map(|k| trial.run_seeded(trial_seed(config.seed, scheme.id(), snr_index as u64, k)))
            .collect::<Result<_>>()?;
        outcomes.iter().for_each(|o| tally.add(o));
        if config.min_errors > 0 && tally.errors >= config.min_errors {
            break;
        }
    }
    Ok(FERRecord {
        scheme,
        snr_db,
        frames: tally.frames,
        frame_errors: tally.errors,
        fer: tally.errors as f64 / tally.frames as f64,
        mean_steps: tally.steps as f64 / tally.frames as f64,
        step_histogram: tally.histogram,
        resampled: tally.resampled,
    })
}

/// Runs every configured scheme at every SNR, scheme-major.
pub fn run_sweep(config: &SimConfig) -> Result<Vec<FERRecord>> {
    config.validate()?;
    let mut out = Vec::with_capacity(config.schemes.len() * config.snr_grid_db.len());
    for &scheme in &config.schemes {
        for k in 0..config.snr_grid_db.len() {
            out.push(run_point(config, scheme, k)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scheme_names_round_trip() {
        for s in Scheme::all() {
            assert_eq!(s.to_string().parse::<Scheme>().unwrap(), s);
        }
        assert_eq!("ar-zf+MMSE".parse::<Scheme>().unwrap(), Scheme::mmse(Detector::ArZf));
        assert!("ZF".parse::<Scheme>().is_err());
        let mut ids: Vec<u64> = Scheme::all().iter().map(|s| s.id()).collect();
        ids.dedup();
        assert_eq!(ids, (0..10).collect::<Vec<_>>());
    }

    #[test]
    fn validation() {
        let ok = SimConfig::default();
        assert!(ok.validate().is_ok());
        let empty = SimConfig { snr_grid_db: vec![], ..ok.clone() };
        assert!(matches!(empty.validate(), Err(Error::InvalidConfig(_))));
        let unsorted = SimConfig { snr_grid_db: vec![3.0, 3.0], ..ok.clone() };
        assert!(unsorted.validate().is_err());
        let few = SimConfig { frames_per_point: 999, ..ok.clone() };
        assert!(few.validate().is_err());
        assert!(run_sweep(&SimConfig { schemes: vec![], ..ok }).is_err());
    }

    #[test]
    fn noiseless_sweep_has_no_errors() {
        let cfg = SimConfig {
            schemes: Scheme::all(),
            snr_grid_db: vec![300.0],
            frames_per_point: 1000,
            ..SimConfig::default()
        };
        for r in run_sweep(&cfg).unwrap() {
            assert_eq!(r.frame_errors, 0, "{}", r.scheme);
            assert_eq!(r.frames, 1000);
        }
    }

    #[test]
    fn sweep_is_reproducible() {
        let cfg = SimConfig {
            schemes: vec![Scheme::plain(Detector::ArZf), Scheme::mmse(Detector::LllZfdfe)],
            snr_grid_db: vec![4.0, 8.0],
            frames_per_point: 3000,
            min_errors: 50,
            ..SimConfig::default()
        };
        assert_eq!(run_sweep(&cfg).unwrap(), run_sweep(&cfg).unwrap());
    }

    #[test]
    fn early_stop_matches_fixed_budget() {
        let base = SimConfig {
            schemes: vec![Scheme::plain(Detector::ArZf)],
            snr_grid_db: vec![6.0],
            frames_per_point: 20_000,
            min_errors: 0,
            ..SimConfig::default()
        };
        let fixed = &run_sweep(&base).unwrap()[0];
        let early = &run_sweep(&SimConfig { min_errors: 200, seed: 99, ..base }).unwrap()[0];
        assert!(early.frames < fixed.frames);
        assert!(early.frame_errors >= 200);
        let sigma = (fixed.stderr().powi(2) + early.stderr().powi(2)).sqrt();
        assert!((early.fer - fixed.fer).abs() <= 3.0 * sigma, "{} vs {}", early.fer, fixed.fer);
    }
}

use super::{FERRecord, Scheme};
use crate::error::{Error, Result};

/// Least-squares slope of `log10 FER` against `-snr_db / 10` over the `top`
/// highest-SNR points of `scheme` that have at least `min_errors` errors.
pub fn diversity_slope(records: &[FERRecord], scheme: Scheme, top: usize, min_errors: u64) -> Result<f64> {
    let mut pts: Vec<(f64, f64)> = records
        .iter()
        .filter(|r| r.scheme == scheme && r.frame_errors >= min_errors && r.fer > 0.0)
        .map(|r| (-r.snr_db / 10.0, r.fer.log10()))
        .collect();
    let needed = top.max(2);
    if pts.len() < needed {
        return Err(Error::InsufficientErrors { min: min_errors, needed, found: pts.len() });
    }
    pts.sort_by(|a, b| b.0.total_cmp(&a.0));
    let pts = &pts[pts.len() - needed..];
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    Ok(sxy / sxx)
}

/// SNR in dB at which the FER curve of `scheme` crosses `target`, interpolating
/// `log10 FER` linearly between grid points.
pub fn snr_at_fer(records: &[FERRecord], scheme: Scheme, target: f64) -> Option<f64> {
    let mut pts: Vec<(f64, f64)> = records.iter().filter(|r| r.scheme == scheme).map(|r| (r.snr_db, r.fer)).collect();
    pts.sort_by(|a, b| a.0.total_cmp(&b.0));
    let lt = target.log10();
    pts.windows(2).find_map(|w| {
        let ((s0, f0), (s1, f1)) = (w[0], w[1]);
        if f0 < target || f1 > target {
            return None;
        }
        if f1 <= 0.0 {
            return if f0 == target { Some(s0) } else { None };
        }
        let (l0, l1) = (f0.log10(), f1.log10());
        if l0 == l1 {
            return Some(s0);
        }
        Some(s0 + (s1 - s0) * (l0 - lt) / (l0 - l1))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim_engine::Detector;

    fn rec(snr_db: f64, fer: f64) -> FERRecord {
        FERRecord {
            scheme: Scheme::plain(Detector::ArZf),
            snr_db,
            frames: 1_000_000,
            frame_errors: (fer * 1e6) as u64,
            fer,
            mean_steps: 0.0,
            step_histogram: vec![],
            resampled: 0,
        }
    }

    #[test]
    fn exact_power_law() {
        let recs: Vec<FERRecord> =
            (0..=10).map(|k| 2.0 * k as f64).map(|db| rec(db, 0.5 / 10f64.powf(db / 10.0).powi(2))).collect();
        let s = diversity_slope(&recs, Scheme::plain(Detector::ArZf), 3, 100).unwrap();
        assert!((s - 2.0).abs() < 1e-6, "{s}");
        let at = snr_at_fer(&recs, Scheme::plain(Detector::ArZf), 0.5e-2).unwrap();
        assert!((at - 10.0).abs() < 1e-9);
    }

    #[test]
    fn slope_needs_enough_errors() {
        let recs = vec![rec(0.0, 0.1), rec(2.0, 0.01), rec(4.0, 1e-5)];
        let e = diversity_slope(&recs, Scheme::plain(Detector::ArZf), 3, 100);
        assert!(matches!(e, Err(Error::InsufficientErrors { found: 2, .. })));
        assert!(snr_at_fer(&recs, Scheme::plain(Detector::Ml), 0.05).is_none());
    }
}

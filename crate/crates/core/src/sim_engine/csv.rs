use std::io::{self, Write};

use super::FERRecord;

/// Formats `x` with six significant digits, switching to exponent form for
/// very small or large magnitudes.
pub fn format_sig(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { "0".into() } else { x.to_string() };
    }
    let exp = x.abs().log10().floor() as i32;
    if !(-4..6).contains(&exp) {
        let s = format!("{:.5e}", x);
        let (mant, e) = s.split_once('e').unwrap_or((&s, "0"));
        return format!("{}e{}", trim_zeros(mant), e);
    }
    let decimals = (5 - exp).max(0) as usize;
    trim_zeros(&format!("{:.*}", decimals, x)).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Writes `scheme,snr_db,frames,frame_errors,fer,mean_steps` rows.
pub fn write_fer_csv<W: Write>(mut w: W, records: &[FERRecord]) -> io::Result<()> {
    writeln!(w, "scheme,snr_db,frames,frame_errors,fer,mean_steps")?;
    for r in records {
        writeln!(
            w,
            "{},{},{},{},{},{}",
            r.scheme,
            format_sig(r.snr_db),
            r.frames,
            r.frame_errors,
            format_sig(r.fer),
            format_sig(r.mean_steps)
        )?;
    }
    Ok(())
}

/// Writes a `steps,count` histogram, skipping empty bins.
pub fn write_step_csv<W: Write>(mut w: W, histogram: &[u64]) -> io::Result<()> {
    writeln!(w, "steps,count")?;
    for (k, &c) in histogram.iter().enumerate() {
        if c > 0 {
            writeln!(w, "{k},{c}")?;
        }
    }
    Ok(())
}

/// Double-exponential quadrature over `[a, b]`, split at the given interior
/// breakpoints and further into `pieces` equal parts per segment.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, breaks: &[f64], pieces: usize, tol: f64) -> f64 {
    let mut knots: Vec<f64> = std::iter::once(a)
        .chain(breaks.iter().copied().filter(|&x| x > a && x < b))
        .chain(std::iter::once(b))
        .collect();
    knots.sort_by(f64::total_cmp);
    knots.dedup();
    let mut total = 0.0;
    for w in knots.windows(2) {
        let h = (w[1] - w[0]) / pieces as f64;
        for k in 0..pieces {
            let lo = w[0] + h * k as f64;
            total += quadrature::double_exponential::integrate(&f, lo, lo + h, tol).integral;
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_with_breaks() {
        assert!((integrate(|x| x * x, 0.0, 3.0, &[1.0], 2, 1e-12) - 9.0).abs() < 1e-10);
    }
}

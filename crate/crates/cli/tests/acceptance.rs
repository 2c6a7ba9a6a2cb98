//! Acceptance suite: one line per criterion, exit status 1 if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use algred::exact_order::{generators, printed_inverses, OrderElement, UnitWord, GENERATOR_COUNT};
use algred::fundamental_domain::{
    area_bound, ball_radii, bisector_closed_forms, build_polyhedron, closed_form_vertices, volume_mc, Polyhedron,
    DEFAULT_BOUND, RELATIONS, TARGET_VOLUME,
};
use algred::golden_code::{
    devectorize, lattice_ml_detect, ml_detect, symbols_to_vec, vectorize, Alphabet, LatticeBasis, LinearDetector,
};
use algred::hyperbolic::{act, cosh_dist, random_sl2, J};
use algred::linalg::{frob_sq, left_mult, GaussMat4, Mat2, C64};
use algred::sim_engine::{
    distribution_checks, diversity_slope, run_sweep, snr_at_fer, step_stats, Detector, FERRecord, Scheme, SimConfig,
};
use algred::unit_search::{compute_t, normalize_channel, reduce, GeneratorTable, DEFAULT_MAX_STEPS};

const SEED: u64 = 20_240_611;
const TRIALS: usize = 100_000;
const COSH_R_MAX: f64 = 2.2361;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict { pass, detail: detail.into() }
}

fn within_time(v: Verdict, elapsed: Duration, limit: Duration) -> Verdict {
    let ok = elapsed <= limit;
    let detail = format!("{}; limit {:.0?}", v.detail, limit);
    verdict(v.pass && ok, detail)
}

fn random_word<R: Rng>(rng: &mut R, max_len: usize) -> UnitWord {
    let len = rng.random_range(1..=max_len);
    UnitWord::new((0..len).map(|_| rng.random_range(1..=16u8)).collect()).unwrap()
}

fn c1_exact_algebra() -> Verdict {
    let start = Instant::now();
    let relations = RELATIONS
        .iter()
        .filter(|(w, plus)| {
            let p = UnitWord::new(w.to_vec()).unwrap().eval();
            if *plus {
                p.is_one()
            } else {
                p == OrderElement::minus_one()
            }
        })
        .count();
    let printed = printed_inverses();
    let inverses = generators()
        .iter()
        .enumerate()
        .filter(|(k, u)| {
            let adj = u.adjugate();
            let ok = u.reduced_norm().is_one()
                && u.mul(&adj).is_one()
                && adj.mul(u).is_one()
                && u.invert_unit().map(|v| v == adj).unwrap_or(false);
            let pair = generators()[(k + GENERATOR_COUNT) % (2 * GENERATOR_COUNT)].clone();
            let printed_ok = *k >= GENERATOR_COUNT || printed[*k] == pair;
            ok && pair == adj && printed_ok
        })
        .count();
    let v =
        verdict(relations == 11 && inverses == 16, format!("{relations}/11 relations, {inverses}/16 inverse entries"));
    within_time(v, start.elapsed(), Duration::from_secs(1))
}

fn c2_frobenius() -> Verdict {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let worst = (0..10_000)
        .map(|_| {
            let g = random_sl2(&mut rng);
            let lhs = frob_sq(&g);
            let rhs = 2.0 * cosh_dist(&J, &act(&g, &J));
            ((lhs - rhs) / rhs).abs()
        })
        .fold(0.0, f64::max);
    let v = verdict(worst <= 1e-9, format!("max relative error {worst:.2e} over 10^4 matrices"));
    within_time(v, start.elapsed(), Duration::from_secs(1))
}

fn c3_unimodularity() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 3);
    let basis = LatticeBasis::golden();
    let units = [(1, 0), (-1, 0), (0, 1), (0, -1)];
    let mut worst = 0.0f64;
    let mut bad = 0;
    for _ in 0..1000 {
        let u = random_word(&mut rng, 20).eval();
        let m = basis.phi_inv * left_mult(&u.embed()) * basis.phi;
        match GaussMat4::round_from(&m, 1e-6) {
            Ok((t, residual)) => {
                worst = worst.max(residual);
                let d = t.det();
                let exact = compute_t(&u, &basis).map(|x| x == t).unwrap_or(false);
                if !units.contains(&(d.re, d.im)) || !exact {
                    bad += 1;
                }
            }
            Err(_) => bad += 1,
        }
    }
    verdict(bad == 0, format!("{bad} failures over 10^3 words, max rounding residual {worst:.2e}"))
}

fn c4_residual_bound() -> Verdict {
    match step_stats(TRIALS, SEED + 4) {
        Ok(s) => {
            let bound = 2.0 * COSH_R_MAX + 1e-3;
            verdict(
                s.max_residual <= bound,
                format!("max ||E||^2 {:.5} <= {bound:.5}, mean {:.5}", s.max_residual, s.mean_residual),
            )
        }
        Err(e) => verdict(false, e.to_string()),
    }
}

fn c5_step_statistics() -> Verdict {
    let start = Instant::now();
    let v = match step_stats(TRIALS, SEED + 5) {
        Ok(s) => {
            let (p1, p2) = (s.probability(1), s.probability(2));
            let ok = (s.mean - 1.923).abs() <= 0.05
                && (p1 - 0.382).abs() <= 0.010
                && (p2 - 0.394).abs() <= 0.010
                && s.count_above(11) == 0;
            let detail = format!("mean {:.4}, P(1) {p1:.4}, P(2) {p2:.4}, {} above 11", s.mean, s.count_above(11));
            verdict(ok, detail)
        }
        Err(e) => verdict(false, e.to_string()),
    };
    within_time(v, start.elapsed(), Duration::from_secs(60))
}

fn c6_beyond_r_min() -> Verdict {
    match distribution_checks(TRIALS, SEED + 6) {
        Ok(d) => verdict(
            d.beyond_r_min_pass(),
            format!(
                "P(rho > R_min) = {:.4}, expected [0.030, 0.046] (cosh R_min {:.5})",
                d.p_beyond_r_min, d.cosh_r_min
            ),
        ),
        Err(e) => verdict(false, e.to_string()),
    }
}

fn c7_distribution_fits() -> Verdict {
    match distribution_checks(TRIALS, SEED + 7) {
        Ok(d) => verdict(
            d.fits_pass() && d.normalizations_pass(),
            format!(
                "T p = {:.3}, Z p = {:.3}; normalizations T {:.1e}, Z {:.1e} from 1",
                d.t_fit.p_value,
                d.z_fit.p_value,
                (d.t_normalization - 1.0).abs(),
                (d.z_normalization - 1.0).abs()
            ),
        ),
        Err(e) => verdict(false, e.to_string()),
    }
}

fn c8_dirichlet_domain(poly: &Polyhedron) -> Verdict {
    let forms = bisector_closed_forms();
    let spheres = forms
        .iter()
        .filter(|(letter, center, radius, side, _)| {
            poly.letters.iter().zip(&poly.constraints).any(|(l, s)| {
                l == letter
                    && (s.center.0 - center.0).abs() <= 1e-9
                    && (s.center.1 - center.1).abs() <= 1e-9
                    && (s.radius - radius).abs() <= 1e-9
                    && s.side == *side
            })
        })
        .count();
    let expected = closed_form_vertices();
    let vertices = expected.iter().filter(|lv| poly.vertices.iter().any(|v| v.euclid_dist(&lv.point) <= 1e-9)).count();
    let (lo, hi) = ball_radii(poly);
    let ok = poly.constraints.len() == 16
        && spheres == 16
        && poly.vertices.len() == 24
        && vertices == 24
        && (lo - 1.9069).abs() <= 1e-3
        && (hi - 2.2360).abs() <= 1e-3;
    verdict(
        ok,
        format!(
            "{} faces, {spheres}/16 spheres match; {} vertices, {vertices}/24 match; cosh R_min {lo:.5}, cosh R_max {hi:.5}",
            poly.constraints.len(),
            poly.vertices.len()
        ),
    )
}

fn c9_volume(poly: &Polyhedron) -> Verdict {
    let start = Instant::now();
    let v = match volume_mc(poly, 10_000_000, SEED + 9) {
        Ok(v) => verdict(
            (v.estimate / TARGET_VOLUME - 1.0).abs() <= 0.02 && v.estimate < 9.77029,
            format!("{:.4} +- {:.4} vs {TARGET_VOLUME:.6}, below 9.77029", v.estimate, v.stderr),
        ),
        Err(e) => verdict(false, e.to_string()),
    };
    within_time(v, start.elapsed(), Duration::from_secs(120))
}

fn c10_area_bound() -> Verdict {
    let a = area_bound();
    let terms = [(a.sector.computed, 36.2937), (a.lens_u2.computed, 5.96793), (a.lens_u4.computed, 5.34536)];
    let ok = terms.iter().all(|(c, e)| (c - e).abs() <= 1e-3) && (a.total.computed - 9.75746).abs() <= 5e-3;
    let shown: Vec<String> = terms.iter().map(|(c, _)| format!("{c:.5}")).collect();
    verdict(ok, format!("terms {}, bound {:.5} (expected 9.75746)", shown.join(", "), a.total.computed))
}

fn c11_fer_behaviour() -> Verdict {
    let start = Instant::now();
    let schemes = vec![
        Scheme::plain(Detector::ArZf),
        Scheme::plain(Detector::Ml),
        Scheme::mmse(Detector::ArZf),
        Scheme::mmse(Detector::ArZfdfe),
        Scheme::mmse(Detector::LllZf),
        Scheme::mmse(Detector::LllZfdfe),
    ];
    let cfg = SimConfig {
        alphabet: Alphabet::Qam4,
        schemes,
        snr_grid_db: (0..=20).step_by(2).map(f64::from).collect(),
        frames_per_point: 2_000_000,
        seed: SEED + 11,
        min_errors: 200,
    };
    let records: Vec<FERRecord> = match run_sweep(&cfg) {
        Ok(r) => r,
        Err(e) => return verdict(false, e.to_string()),
    };
    let slope = diversity_slope(&records, Scheme::plain(Detector::ArZf), 4, 200);
    let at = |s: Scheme| snr_at_fer(&records, s, 1e-3);
    let ml = at(Scheme::plain(Detector::Ml));
    let ar_zf = at(Scheme::mmse(Detector::ArZf));
    let ar_dfe = at(Scheme::mmse(Detector::ArZfdfe));
    let lll_zf = at(Scheme::mmse(Detector::LllZf));
    let lll_dfe = at(Scheme::mmse(Detector::LllZfdfe));

    let a = matches!(slope, Ok(d) if (1.6..=2.4).contains(&d));
    let gaps = ml.zip(ar_zf).zip(ar_dfe).map(|((m, z), d)| (z - m, d - m));
    let b = matches!(gaps, Some((gz, gd)) if (2.5..=5.5).contains(&gz) && gd < gz);
    let diffs = ar_zf.zip(lll_zf).zip(ar_dfe.zip(lll_dfe)).map(|((a1, l1), (a2, l2))| (a1 - l1, a2 - l2));
    let c = matches!(diffs, Some((d1, d2)) if d1.abs() <= 1.0 && d2.abs() <= 1.0);

    let fmt = |x: Option<(f64, f64)>| x.map_or("n/a".to_string(), |(p, q)| format!("{p:.2}/{q:.2} dB"));
    let detail = format!(
        "(a) slope {} [{}] (b) ZF/ZFDFE gap to ML {} [{}] (c) AR-LLL ZF/ZFDFE {} [{}]",
        slope.as_ref().map_or_else(|e| e.to_string(), |d| format!("{d:.2}")),
        if a { "ok" } else { "fail" },
        fmt(gaps),
        if b { "ok" } else { "fail" },
        fmt(diffs),
        if c { "ok" } else { "fail" },
    );
    within_time(verdict(a && b && c, detail), start.elapsed(), Duration::from_secs(600))
}

fn c12_perfect_approximation() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 12);
    let basis = LatticeBasis::golden();
    let alphabet = Alphabet::Qam4;
    let n0 = alphabet.energy() / 10f64.powf(8.0 / 10.0);
    let (mut agree, mut constrained) = (0, 0);
    for frame in 0..1000 {
        let h: Mat2 = random_word(&mut rng, 4).eval().embed();
        let s = alphabet.random_vector(&mut rng);
        let x = devectorize(&(basis.phi * symbols_to_vec(&s)));
        let w = Mat2::from_fn(|_, _| {
            let (a, b): (f64, f64) = (rng.sample(rand_distr::StandardNormal), rng.sample(rand_distr::StandardNormal));
            C64::new(a, b) * (n0 / 2.0).sqrt()
        });
        let y = vectorize(&(h * x + w));
        let run = || -> algred::Result<_> {
            let (h1, d) = normalize_channel(&h)?;
            let r = reduce(&h1, GeneratorTable::shared(), DEFAULT_MAX_STEPS)?;
            let g = left_mult(&(r.e * d.sqrt())) * basis.phi;
            Ok(LinearDetector::new(&g, &r.t)?.zf(&y, alphabet))
        };
        let g = left_mult(&h) * basis.phi;
        let ml = lattice_ml_detect(&y, &g).map(|z| alphabet.clamp(z));
        match run() {
            Ok(zf) if zf == ml => agree += 1,
            Ok(_) => {}
            Err(e) => return verdict(false, format!("frame {frame}: {e}")),
        }
        if ml == ml_detect(&y, &g, alphabet) {
            constrained += 1;
        }
    }
    verdict(
        agree == 1000,
        format!("{agree}/1000 frames agree with lattice ML at 8 dB ({constrained} also equal constrained ML)"),
    )
}

fn main() {
    let started = Instant::now();
    let poly = build_polyhedron(DEFAULT_BOUND);
    let criteria: Vec<(u32, &str, Box<dyn Fn() -> Verdict>)> = vec![
        (1, "exact algebra", Box::new(c1_exact_algebra)),
        (2, "Frobenius identity", Box::new(c2_frobenius)),
        (3, "unimodularity", Box::new(c3_unimodularity)),
        (4, "residual bound", Box::new(c4_residual_bound)),
        (5, "step statistics", Box::new(c5_step_statistics)),
        (6, "P(rho > R_min)", Box::new(c6_beyond_r_min)),
        (7, "distribution fits", Box::new(c7_distribution_fits)),
        (
            8,
            "Dirichlet domain",
            Box::new(|| match &poly {
                Ok(p) => c8_dirichlet_domain(p),
                Err(e) => verdict(false, e.to_string()),
            }),
        ),
        (
            9,
            "volume",
            Box::new(|| match &poly {
                Ok(p) => c9_volume(p),
                Err(e) => verdict(false, e.to_string()),
            }),
        ),
        (10, "area bound", Box::new(c10_area_bound)),
        (11, "FER behaviour", Box::new(c11_fer_behaviour)),
        (12, "perfect approximation", Box::new(c12_perfect_approximation)),
    ];
    let mut failed = Vec::new();
    for (n, name, check) in &criteria {
        let t = Instant::now();
        let v = catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|p| verdict(false, format!("panicked: {}", panic_message(&p))));
        let tag = if v.pass { "PASS" } else { "FAIL" };
        println!("criterion {n:>2} [{tag}] {name}: {} ({:.1?})", v.detail, t.elapsed());
        if !v.pass {
            failed.push(*n);
        }
    }
    println!(
        "acceptance: {}/{} criteria pass in {:.1?}{}",
        criteria.len() - failed.len(),
        criteria.len(),
        started.elapsed(),
        if failed.is_empty() { String::new() } else { format!("; failing: {failed:?}") }
    );
    if !failed.is_empty() {
        std::process::exit(1);
    }
}

fn panic_message(p: &Box<dyn std::any::Any + Send>) -> String {
    p.downcast_ref::<&str>()
        .map(|s| s.to_string())
        .or_else(|| p.downcast_ref::<String>().cloned())
        .unwrap_or_else(|| "unknown panic".into())
}

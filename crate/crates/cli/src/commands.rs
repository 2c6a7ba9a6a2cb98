use std::fmt::Write as _;
use std::path::Path;

use anyhow::{bail, Context, Result};

use algred::exact_order::{generators, printed_inverses, GaussInt, UnitWord, GENERATOR_COUNT};
use algred::fundamental_domain::{
    area_bound, ball_radii, build_polyhedron, verify_tables, volume_mc, RowStatus, TableReport, DEFAULT_BOUND,
    TARGET_VOLUME,
};
use algred::linalg::{frob_sq, mat2, GaussI64, Mat2, C64};
use algred::sim_engine::{
    distribution_checks, format_sig, run_point, step_stats, write_fer_csv, write_step_csv, FERRecord, SimConfig,
};
use algred::unit_search::{normalize_channel, reduce, GeneratorTable, DEFAULT_MAX_STEPS};

use crate::config::{sim_config, Ini};
use crate::output::{emit, sidecar, write_atomic};
use crate::{Cli, Command};

const COSH_R_MIN: f64 = 1.9069;
const COSH_R_MAX: f64 = 2.2360;
const RADIUS_TOL: f64 = 1e-3;
const VOLUME_TOL: f64 = 0.02;
const VOLUME_CEILING: f64 = 9.77029;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success,
    /// At least one verification row failed.
    Failed,
}

impl Outcome {
    fn from_pass(ok: bool) -> Self {
        if ok {
            Outcome::Success
        } else {
            Outcome::Failed
        }
    }
}

pub fn dispatch(cli: Cli) -> Result<Outcome> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(n as usize).build_global().context("cannot start thread pool")?;
    }
    if cli.config.is_some() && !matches!(cli.command, Command::Simulate) {
        bail!("--config is only read by simulate");
    }
    let out = cli.out.as_deref();
    match cli.command {
        Command::Simulate => simulate(cli.config.as_deref(), out, cli.seed),
        Command::Reduce { input } => reduce_cmd(input.as_deref(), out),
        Command::VerifyDomain { samples } => verify_domain(samples, cli.seed.unwrap_or(1), out),
        Command::StepStats { trials, histogram } => {
            step_stats_cmd(trials, cli.seed.unwrap_or(1), out, histogram.as_deref())
        }
        Command::DistChecks { samples } => dist_checks(samples, cli.seed.unwrap_or(1), out),
        Command::DumpGenerators => {
            emit(out, &dump_generators())?;
            Ok(Outcome::Success)
        }
    }
}

pub fn load_sim_config(path: Option<&Path>, seed: Option<u64>) -> Result<SimConfig> {
    let mut cfg = match path {
        Some(p) => {
            let text = std::fs::read_to_string(p).with_context(|| format!("cannot read {}", p.display()))?;
            let ini = Ini::parse(&text).with_context(|| p.display().to_string())?;
            sim_config(&ini).with_context(|| p.display().to_string())?
        }
        None => SimConfig::default(),
    };
    if let Some(s) = seed {
        cfg.seed = s;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn simulate(config: Option<&Path>, out: Option<&Path>, seed: Option<u64>) -> Result<Outcome> {
    let cfg = load_sim_config(config, seed)?;
    let mut records: Vec<FERRecord> = Vec::new();
    for &scheme in &cfg.schemes {
        for k in 0..cfg.snr_grid_db.len() {
            let r = run_point(&cfg, scheme, k)?;
            eprintln!("{scheme} {} dB: {}/{} errors", format_sig(r.snr_db), r.frame_errors, r.frames);
            records.push(r);
        }
    }
    let mut csv = Vec::new();
    write_fer_csv(&mut csv, &records)?;
    let Some(path) = out else {
        emit(None, std::str::from_utf8(&csv)?)?;
        return Ok(Outcome::Success);
    };
    write_atomic(path, &csv)?;
    let mut hist: Vec<u64> = Vec::new();
    for r in records.iter().filter(|r| r.scheme.detector.is_algebraic()) {
        if hist.len() < r.step_histogram.len() {
            hist.resize(r.step_histogram.len(), 0);
        }
        hist.iter_mut().zip(&r.step_histogram).for_each(|(a, b)| *a += b);
    }
    if !hist.is_empty() {
        let mut steps = Vec::new();
        write_step_csv(&mut steps, &hist)?;
        write_atomic(&sidecar(path, "steps.csv"), &steps)?;
    }
    Ok(Outcome::Success)
}

/// Eight reals, row-major with real and imaginary parts interleaved.
pub fn parse_matrix(text: &str) -> Result<Mat2> {
    let nums: Vec<f64> = text
        .split_whitespace()
        .map(|t| t.parse::<f64>().with_context(|| format!("'{t}' is not a number")))
        .collect::<Result<_>>()?;
    if nums.len() != 8 {
        bail!("expected 8 numbers (a 2x2 complex matrix), found {}", nums.len());
    }
    if nums.iter().any(|x| !x.is_finite()) {
        bail!("matrix entries must be finite");
    }
    let z = |k: usize| C64::new(nums[2 * k], nums[2 * k + 1]);
    Ok(mat2(z(0), z(1), z(2), z(3)))
}

fn complex_str(z: C64) -> String {
    let im = format_sig(z.im.abs());
    if z.im == 0.0 {
        format_sig(z.re)
    } else if z.re == 0.0 {
        format!("{}{im}i", if z.im < 0.0 { "-" } else { "" })
    } else {
        format!("{}{}{im}i", format_sig(z.re), if z.im < 0.0 { "-" } else { "+" })
    }
}

fn gauss_str(g: GaussI64) -> String {
    GaussInt::new(g.re, g.im).to_string()
}

pub fn reduce_report(h: &Mat2) -> Result<String> {
    let (h1, det) = normalize_channel(h)?;
    let r = reduce(&h1, GeneratorTable::shared(), DEFAULT_MAX_STEPS)?;
    let mut s = String::new();
    writeln!(s, "det     {}", complex_str(det))?;
    writeln!(s, "word    {}", r.word)?;
    writeln!(s, "unit    {}", r.unit_exact)?;
    writeln!(s, "steps   {}", r.steps)?;
    writeln!(s, "norm_e  {}", format_sig(frob_sq(&r.e)))?;
    writeln!(s, "T")?;
    for row in &r.t.0 {
        let cells: Vec<String> = row.iter().map(|&g| format!("{:>8}", gauss_str(g))).collect();
        writeln!(s, "  {}", cells.join(""))?;
    }
    Ok(s)
}

fn reduce_cmd(input: Option<&Path>, out: Option<&Path>) -> Result<Outcome> {
    let text = match input {
        Some(p) if p != Path::new("-") => {
            std::fs::read_to_string(p).with_context(|| format!("cannot read {}", p.display()))?
        }
        _ => std::io::read_to_string(std::io::stdin()).context("cannot read standard input")?,
    };
    emit(out, &reduce_report(&parse_matrix(&text)?)?)?;
    Ok(Outcome::Success)
}

fn row(s: &mut String, status: RowStatus, label: &str, detail: impl AsRef<str>) {
    let line = format!("{:<6}{label:<30} {}", status.to_string(), detail.as_ref());
    let _ = writeln!(s, "{}", line.trim_end());
}

fn status(ok: bool) -> RowStatus {
    if ok {
        RowStatus::Pass
    } else {
        RowStatus::Fail
    }
}

fn note(n: Option<&str>) -> String {
    n.map(|n| format!("  ({n})")).unwrap_or_default()
}

fn faces(f: &[u8]) -> String {
    f.iter().map(u8::to_string).collect::<Vec<_>>().join(",")
}

fn table_section(s: &mut String, t: &TableReport) {
    s.push_str("# relations\n");
    for r in &t.relations {
        row(s, r.status, &r.word.to_string(), if r.expected_plus_one { "= 1" } else { "= -1" });
    }
    s.push_str("# bisectors\n");
    for b in &t.bisectors {
        let detail = format!(
            "center ({}, {}) radius {} {:?}{}",
            format_sig(b.computed_center.0),
            format_sig(b.computed_center.1),
            format_sig(b.computed_radius),
            b.computed_side,
            note(b.note)
        );
        row(s, b.status, &format!("u{}", b.letter), detail);
    }
    s.push_str("# vertices\n");
    for v in &t.vertices {
        let detail = format!("faces {} offset {:.1e}{}", faces(&v.faces), v.distance, note(v.note));
        row(s, v.status, &v.label, detail);
    }
    s.push_str("# edge cycles\n");
    for c in &t.cycles {
        let order = c.order.map_or_else(|| "none".to_string(), |o| o.to_string());
        let edges: Vec<String> = c.edges.iter().map(|(a, b)| format!("{a}{b}")).collect();
        let label = if edges.is_empty() {
            UnitWord::new(c.letters.clone()).map(|w| w.to_string()).unwrap_or_default()
        } else {
            edges.join(" ")
        };
        let detail = format!("order {order} (expected {}){}", c.expected_order, note(c.note));
        row(s, c.status, &label, detail);
    }
    s.push_str("# rotations\n");
    for r in &t.rotations {
        row(s, r.status, r.name, format!("{} angle {}", r.word, format_sig(r.eigen_arg)));
    }
    s.push_str("# vertex actions\n");
    for a in &t.actions {
        let got = a.computed_to.as_deref().unwrap_or("none");
        let detail = format!("-> {got} (printed {}){}", a.printed_to, note(a.note));
        row(s, a.status, &format!("u{}({})", a.letter, a.from), detail);
    }
}

pub fn verify_domain_report(samples: usize, seed: u64) -> Result<(String, bool)> {
    let poly = build_polyhedron(DEFAULT_BOUND)?;
    let tables = verify_tables(&poly);
    let mut s = String::new();
    table_section(&mut s, &tables);
    let mut ok = tables.all_pass();

    s.push_str("# radii\n");
    let (lo, hi) = ball_radii(&poly);
    for (name, got, want) in [("cosh R_min", lo, COSH_R_MIN), ("cosh R_max", hi, COSH_R_MAX)] {
        let pass = (got - want).abs() <= RADIUS_TOL;
        ok &= pass;
        row(&mut s, status(pass), name, format!("{got:.6} (expected {want})"));
    }

    s.push_str("# volume\n");
    let v = volume_mc(&poly, samples, seed)?;
    let pass = (v.estimate / TARGET_VOLUME - 1.0).abs() <= VOLUME_TOL && v.estimate < VOLUME_CEILING;
    ok &= pass;
    let detail =
        format!("{:.5} +- {:.5} over {} samples (expected {TARGET_VOLUME:.6})", v.estimate, v.stderr, v.samples);
    row(&mut s, status(pass), "volume", detail);

    s.push_str("# area bound\n");
    let a = area_bound();
    for t in a.terms() {
        ok &= t.ok();
        row(&mut s, status(t.ok()), t.name, format!("{:.6} (expected {} +- {})", t.computed, t.expected, t.tolerance));
    }
    let below = a.total.computed < a.threshold;
    ok &= below;
    row(&mut s, status(below), "below threshold", format!("{:.6} < {}", a.total.computed, a.threshold));

    let _ = writeln!(s, "{}", if ok { "all rows pass" } else { "FAILED rows present" });
    Ok((s, ok))
}

fn verify_domain(samples: usize, seed: u64, out: Option<&Path>) -> Result<Outcome> {
    let (text, ok) = verify_domain_report(samples, seed)?;
    emit(out, &text)?;
    Ok(Outcome::from_pass(ok))
}

fn step_stats_cmd(trials: usize, seed: u64, out: Option<&Path>, histogram: Option<&Path>) -> Result<Outcome> {
    let st = step_stats(trials, seed)?;
    let mut s = String::new();
    writeln!(s, "trials        {}", st.trials)?;
    writeln!(s, "mean steps    {:.5}", st.mean)?;
    writeln!(s, "mean ||E||^2  {:.5}", st.mean_residual)?;
    writeln!(s, "max ||E||^2   {:.5}", st.max_residual)?;
    s.push_str("steps  count  probability\n");
    for (k, &c) in st.histogram.iter().enumerate().filter(|(_, &c)| c > 0) {
        writeln!(s, "{k:>5}  {c:>5}  {:.5}", c as f64 / st.trials as f64)?;
    }
    let checks = [
        ("mean", (st.mean - 1.923).abs() <= 0.05),
        ("P(1)", (st.probability(1) - 0.382).abs() <= 0.010),
        ("P(2)", (st.probability(2) - 0.394).abs() <= 0.010),
        ("none above 11", st.count_above(11) == 0),
        ("residual bound", st.max_residual <= 2.0 * COSH_R_MAX + 1e-3),
    ];
    for (name, pass) in checks {
        row(&mut s, status(pass), name, "");
    }
    if let Some(p) = histogram {
        let mut csv = Vec::new();
        write_step_csv(&mut csv, &st.histogram)?;
        write_atomic(p, &csv)?;
    }
    emit(out, &s)?;
    Ok(Outcome::from_pass(checks.iter().all(|c| c.1)))
}

fn dist_checks(samples: usize, seed: u64, out: Option<&Path>) -> Result<Outcome> {
    let d = distribution_checks(samples, seed)?;
    let mut s = String::new();
    writeln!(s, "samples {}", d.samples)?;
    let fit = |c: &algred::sim_engine::ChiSquare| format!("chi2 {:.2} df {} p {:.4}", c.statistic, c.df, c.p_value);
    row(&mut s, status(d.t_fit.p_value > 0.01), "T density fit", fit(&d.t_fit));
    row(&mut s, status(d.z_fit.p_value > 0.01), "Z density fit", fit(&d.z_fit));
    let norms = format!("T {:.12} Z {:.12}", d.t_normalization, d.z_normalization);
    row(&mut s, status(d.normalizations_pass()), "normalizations", norms);
    let mean = format!("{:.5} (analytic {:.5})", d.t_mean_empirical, d.t_mean_analytic);
    row(&mut s, status(d.mean_pass()), "mean of T", mean);
    let beyond = format!("{:.5} (expected 0.030..0.046, cosh R_min {:.5})", d.p_beyond_r_min, d.cosh_r_min);
    row(&mut s, status(d.beyond_r_min_pass()), "P(rho > R_min)", beyond);
    row(&mut s, status(d.five_r_min_pass()), "rho > 5 R_min", format!("{} channels", d.beyond_five_r_min));
    let ok = d.fits_pass() && d.normalizations_pass() && d.mean_pass() && d.beyond_r_min_pass() && d.five_r_min_pass();
    emit(out, &s)?;
    Ok(Outcome::from_pass(ok))
}

pub fn dump_generators() -> String {
    let mut s = String::from("# coefficients over 1, theta, j, theta j\n");
    let printed = printed_inverses();
    for (k, u) in generators().iter().enumerate() {
        let (name, mark) = if k < GENERATOR_COUNT {
            (format!("u{}", k + 1), "")
        } else if printed[k - GENERATOR_COUNT] == *u {
            (format!("u{}^-1", k + 1 - GENERATOR_COUNT), "")
        } else {
            (format!("u{}^-1", k + 1 - GENERATOR_COUNT), "  (printed inverse differs)")
        };
        let _ = writeln!(s, "{:>2} {name:<6} {u}  norm {}{mark}", k + 1, u.reduced_norm());
    }
    s
}

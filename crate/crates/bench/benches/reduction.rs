use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use algred::exact_order::enumerate_norm_bounded;
use algred::golden_code::{ml_detect, symbols_to_vec, Alphabet, LatticeBasis};
use algred::linalg::{left_mult, Mat2, Vec4};
use algred::lll_baseline::{lll_reduce, DEFAULT_DELTA};
use algred::sim_engine::{sample_channel, Detector, Scheme, Trial};
use algred::unit_search::{normalize_channel, reduce, GeneratorTable, DEFAULT_MAX_STEPS};

fn channels(n: usize) -> Vec<Mat2> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    (0..n).map(|_| sample_channel(&mut rng)).collect()
}

fn tile_walk(c: &mut Criterion) {
    let hs: Vec<Mat2> = channels(256).iter().map(|h| normalize_channel(h).unwrap().0).collect();
    let table = GeneratorTable::shared();
    let mut k = 0;
    c.bench_function("reduce", |b| {
        b.iter(|| {
            k = (k + 1) % hs.len();
            reduce(black_box(&hs[k]), table, DEFAULT_MAX_STEPS).unwrap()
        })
    });
}

fn lll(c: &mut Criterion) {
    let phi = LatticeBasis::golden().phi;
    let bases: Vec<_> = channels(256).iter().map(|h| left_mult(h) * phi).collect();
    let mut k = 0;
    c.bench_function("lll_reduce", |b| {
        b.iter(|| {
            k = (k + 1) % bases.len();
            lll_reduce(black_box(&bases[k]), DEFAULT_DELTA).unwrap()
        })
    });
}

fn enumeration(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumerate_norm_bounded");
    g.sample_size(10);
    g.bench_function("bound 9", |b| b.iter(|| enumerate_norm_bounded(black_box(9.0)).unwrap()));
    g.finish();
}

fn ml(c: &mut Criterion) {
    let phi = LatticeBasis::golden().phi;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for alphabet in [Alphabet::Qam4, Alphabet::Qam16] {
        let g = left_mult(&sample_channel(&mut rng)) * phi;
        let y: Vec4 = g * symbols_to_vec(&alphabet.random_vector(&mut rng));
        c.bench_function(&format!("ml_detect {}", alphabet.name()), |b| {
            b.iter(|| ml_detect(black_box(&y), &g, alphabet))
        });
    }
}

fn frames(c: &mut Criterion) {
    let mut g = c.benchmark_group("frame");
    for scheme in [Scheme::plain(Detector::ArZf), Scheme::mmse(Detector::ArZfdfe), Scheme::mmse(Detector::LllZfdfe)] {
        let trial = Trial::new(Alphabet::Qam4, scheme, 12.0);
        let mut seed = 0u64;
        g.bench_function(scheme.to_string(), |b| {
            b.iter_batched(
                || {
                    seed += 1;
                    seed
                },
                |s| trial.run_seeded(s).unwrap(),
                BatchSize::SmallInput,
            )
        });
    }
    g.finish();
}

criterion_group!(benches, tile_walk, lll, enumeration, ml, frames);
criterion_main!(benches);

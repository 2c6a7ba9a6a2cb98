//! The tile walk against exhaustive search over all units of bounded norm.

use algred::exact_order::enumerate_norm_bounded;
use algred::hyperbolic::{act_inverse, cosh_dist, random_sl2, J};
use algred::linalg::{frob_sq, inv2};
use algred::unit_search::{reduce, GeneratorTable, DEFAULT_MAX_STEPS};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const BOUND: f64 = 60.0;

#[test]
fn walk_finds_the_closest_orbit_point() {
    let cosh_r_max = 5f64.sqrt();
    let units = enumerate_norm_bounded(BOUND).unwrap();
    let mats: Vec<_> = units.iter().map(|u| u.embed()).collect();
    let table = GeneratorTable::shared();
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let (mut checked, mut skipped) = (0, 0);
    while checked < 1000 {
        let h1 = random_sl2(&mut rng);
        let rho = cosh_dist(&act_inverse(&h1, &J), &J).acosh();
        if 2.0 * (rho + cosh_r_max.acosh()).cosh() > BOUND {
            skipped += 1;
            continue;
        }
        let h_inv = inv2(&h1).unwrap();
        let best = mats.iter().map(|u| frob_sq(&(u * h_inv))).fold(f64::INFINITY, f64::min);
        let r = reduce(&h1, table, DEFAULT_MAX_STEPS).unwrap();
        let got = frob_sq(&(r.unit_numeric * h_inv));
        assert!((got - best).abs() <= 1e-9 * best, "walk {got} vs exhaustive {best}");
        checked += 1;
    }
    assert!(skipped < 200, "{skipped} channels beyond the enumeration bound");
}

#[test]
fn residual_is_the_inverse_distance() {
    let table = GeneratorTable::shared();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..1000 {
        let h1 = random_sl2(&mut rng);
        let r = reduce(&h1, table, DEFAULT_MAX_STEPS).unwrap();
        let h_inv = inv2(&h1).unwrap();
        assert!((frob_sq(&r.e) - frob_sq(&(r.unit_numeric * h_inv))).abs() < 1e-9 * frob_sq(&r.e));
        assert!(frob_sq(&r.e) <= 2.0 * 5f64.sqrt() + 1e-6);
        assert!(r.trace.windows(2).all(|w| w[1] <= w[0] + 1e-12));
    }
}

//! Brute-force short-slope enumeration in plain floating point with a
//! relative safety margin around the cutoff.

use std::collections::BTreeSet;

use momtools::fillings::{enumerate_short_slopes, CuspShape, SlopeFlag};
use momtools::rigor::{Interval, RigorousComplex};
use num_integer::Integer;
use rand::Rng;

pub const BOX: i64 = 200;

pub type Slopes = BTreeSet<(i64, i64)>;
const MARGIN: f64 = 1e-9;

/// Slopes certainly inside and slopes too close to call.
pub fn brute_force(mu: (f64, f64), lambda: (f64, f64), cutoff: f64) -> (Slopes, Slopes) {
    let mut inside = BTreeSet::new();
    let mut close = BTreeSet::new();
    let c2 = cutoff * cutoff;
    for p in 0..=BOX {
        for q in -BOX..=BOX {
            if (p == 0 && q <= 0) || p.gcd(&q) != 1 {
                continue;
            }
            let x = p as f64 * mu.0 + q as f64 * lambda.0;
            let y = p as f64 * mu.1 + q as f64 * lambda.1;
            let l2 = x * x + y * y;
            if l2 < c2 * (1.0 - MARGIN) {
                inside.insert((p, q));
            } else if l2 <= c2 * (1.0 + MARGIN) {
                close.insert((p, q));
            }
        }
    }
    (inside, close)
}

pub fn random_shape(rng: &mut impl Rng) -> ((f64, f64), (f64, f64)) {
    let r: f64 = rng.gen_range(1.0..4.0);
    let a: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    let (tx, ty): (f64, f64) = (rng.gen_range(-2.0..2.0), rng.gen_range(0.5..3.0));
    let mu = (r * a.cos(), r * a.sin());
    let lambda = (mu.0 * tx - mu.1 * ty, mu.0 * ty + mu.1 * tx);
    (mu, lambda)
}

/// Compares the enumeration with the brute force on `trials` random shapes;
/// returns descriptions of mismatches.
pub fn enumeration_trials(trials: usize, seed: u64) -> Vec<String> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut bad = Vec::new();
    for _ in 0..trials {
        let (mu, lambda) = random_shape(&mut rng);
        let cutoff: f64 = rng.gen_range(6.3..12.0);
        let shape = CuspShape::new(
            RigorousComplex::point(mu.0, mu.1),
            RigorousComplex::point(lambda.0, lambda.1),
        )
        .unwrap();
        let got = enumerate_short_slopes(&shape, Interval::point(cutoff)).unwrap();
        let (inside, close) = brute_force(mu, lambda, cutoff);
        let set: BTreeSet<(i64, i64)> = got.iter().map(|s| (s.slope.p, s.slope.q)).collect();
        let complete = inside.is_subset(&set);
        let sound = set.iter().all(|s| inside.contains(s) || close.contains(s));
        let flags = got
            .iter()
            .all(|s| s.flag == SlopeFlag::Borderline || inside.contains(&(s.slope.p, s.slope.q)));
        if !(complete && sound && flags) {
            bad.push(format!("mu={mu:?} lambda={lambda:?} cutoff={cutoff}"));
        }
    }
    bad
}

//! High-precision reference values through MPFR.

use momtools::rigor::Interval;
use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;

pub const PREC: u32 = 256;

pub fn f(x: f64) -> Float {
    Float::with_val(PREC, x)
}

pub fn pi() -> Float {
    Float::with_val(PREC, Constant::Pi)
}

/// Whether the interval contains the reference value.
pub fn encloses(i: &Interval, v: &Float) -> bool {
    f(i.lo()) <= *v && *v <= f(i.hi())
}

/// `-∫₀^θ log|2 sin t| dt` for `0 < θ < π` by double-exponential quadrature
/// on the substitution `t = θ / (1 + e^{-π sinh x})`.
pub fn lobachevsky_quadrature(theta: &Float) -> Float {
    let half_pi = pi() / 2u32;
    let h = Float::with_val(PREC, 1) / 256u32;
    let mut sum = Float::with_val(PREC, 0);
    let tiny = Float::with_val(PREC, 2).pow(-300i32);
    for k in -2000i32..=2000 {
        let x = Float::with_val(PREC, &h * k);
        let u = Float::with_val(PREC, &half_pi * x.clone().sinh());
        // t = θ/2 (1 + tanh u), weight = θ/2 · (π/2) cosh x / cosh² u
        let e = Float::with_val(PREC, -2 * u.clone()).exp();
        let t = Float::with_val(PREC, theta / Float::with_val(PREC, 1 + &e));
        let cu = u.cosh();
        let w = Float::with_val(PREC, theta / 2u32) * &half_pi * x.cosh() / cu.square();
        if w < tiny {
            continue;
        }
        if t.is_zero() || t >= *theta {
            continue;
        }
        let integrand = -Float::with_val(PREC, 2 * t.sin()).ln();
        sum += w * integrand;
    }
    sum * h
}

fn random_f64(rng: &mut impl rand::Rng) -> f64 {
    let m: f64 = rng.gen_range(1.0..2.0);
    let e: i32 = rng.gen_range(-20..=20);
    let s = if rng.gen_bool(0.5) { -1.0 } else { 1.0 };
    s * m * 2f64.powi(e)
}

/// Checks every interval operation on random point inputs against MPFR.
/// Returns the descriptions of the failing cases.
pub fn containment_trials(trials: usize, seed: u64) -> Vec<String> {
    use momtools::rigor::RigorousComplex;
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    let mut check = |name: &str, a: f64, b: f64, got: Interval, want: Float| {
        if !encloses(&got, &want) {
            failures.push(format!("{name}({a:e}, {b:e}) = {got} misses {want}"));
        }
    };
    for _ in 0..trials {
        let a = random_f64(&mut rng);
        let b = random_f64(&mut rng);
        let (ia, ib) = (Interval::point(a), Interval::point(b));
        check("add", a, b, ia + ib, f(a) + f(b));
        check("sub", a, b, ia - ib, f(a) - f(b));
        check("mul", a, b, ia * ib, f(a) * f(b));
        check("div", a, b, ia.checked_div(&ib).unwrap(), f(a) / f(b));
        check("sqr", a, 0.0, ia.sqr(), f(a).square());
        check("cube", a, 0.0, ia.powi(3), f(a).pow(3u32));
        let p = a.abs();
        let ip = Interval::point(p);
        check("sqrt", p, 0.0, ip.sqrt().unwrap(), f(p).sqrt());
        check("ln", p, 0.0, ip.ln().unwrap(), f(p).ln());
        check("cbrt", a, 0.0, ia.cbrt(), f(a).cbrt());
        check(
            "pow2/3",
            p,
            0.0,
            ip.pow_two_thirds().unwrap(),
            f(p).square().cbrt(),
        );
        check(
            "pow3/2",
            p,
            0.0,
            ip.pow_three_halves().unwrap(),
            f(p) * f(p).sqrt(),
        );
        let x: f64 = rng.gen_range(-40.0..40.0);
        check("exp", x, 0.0, Interval::point(x).exp(), f(x).exp());
        check("sin", a, 0.0, ia.sin(), f(a).sin());
        check("cos", a, 0.0, ia.cos(), f(a).cos());
        let c: f64 = rng.gen_range(-1.0..=1.0);
        check(
            "acos",
            c,
            0.0,
            Interval::point(c).acos().unwrap(),
            f(c).acos(),
        );
        let z = RigorousComplex::point(a, b);
        check("abs", a, b, z.abs(), f(a).hypot(&f(b)));
        if let Ok(t) = z.arg() {
            check("arg", a, b, t, f(b).atan2(&f(a)));
        }
    }
    failures
}

/// Overlap checks of `Л(π+θ) = Л(θ)`, `Л(2θ) = 2Л(θ) + 2Л(θ+π/2)` and the
/// global bound `|Л| ≤ Л(π/6)` at random θ. Returns the failing θ.
pub fn lobachevsky_identity_trials(trials: usize, seed: u64) -> Vec<f64> {
    use momtools::rigor::{lobachevsky, lobachevsky_max};
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let pi = Interval::pi();
    let half_pi = pi.checked_div(&Interval::point(2.0)).unwrap();
    let two = Interval::point(2.0);
    let m = lobachevsky_max();
    let mut bad = Vec::new();
    for _ in 0..trials {
        let t: f64 = rng.gen_range(-10.0..10.0);
        let th = Interval::point(t);
        let l = lobachevsky(th).unwrap();
        let shifted = lobachevsky(pi + th).unwrap();
        let doubled = lobachevsky(two * th).unwrap();
        let sum = two * l + two * lobachevsky(th + half_pi).unwrap();
        let bounded = l.lo() >= -m.hi() && l.hi() <= m.hi();
        if !l.overlaps(&shifted) || !doubled.overlaps(&sum) || !bounded {
            bad.push(t);
        }
    }
    bad
}

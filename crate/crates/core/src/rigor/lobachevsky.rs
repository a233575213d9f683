//! Rigorous enclosures of the Lobachevsky function
//! `Л(θ) = -∫₀^θ log|2 sin t| dt`.
//!
//! Л is odd and π-periodic, so every argument is reduced to `[-π/2, π/2]`
//! (plus the width of the input). On `(0, π/2]` we use the expansion obtained
//! by integrating `log(sin t / t) = -Σ ζ(2k) t^{2k} / (k π^{2k})` termwise:
//!
//! ```text
//! Л(θ) = θ (1 - log 2θ) + Σ_{k≥1} c_k θ^{2k+1},
//! c_k  = ζ(2k) / (k (2k+1) π^{2k}) = |B_{2k}| 2^{2k-1} / (k (2k+1) (2k)!)
//! ```
//!
//! The `c_k` are exact rationals. All terms are positive for θ > 0 and, with
//! `x = θ/π` and `ζ(2k) ≤ 2`, the tail after `K` terms is at most
//! `2 θ x^{2K+2} / ((K+1)(2K+3)(1-x²))`.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Interval, RigorError};

/// Number of series terms. With θ ≤ 3π/4 the tail bound is below 1e-17.
const TERMS: usize = 60;

fn bernoulli_numbers(n: usize) -> Vec<BigRational> {
    // B_m = -1/(m+1) Σ_{j<m} C(m+1, j) B_j
    let mut b: Vec<BigRational> = Vec::with_capacity(n + 1);
    b.push(BigRational::one());
    for m in 1..=n {
        let mut acc = BigRational::zero();
        let mut binom = BigInt::one(); // C(m+1, j) at j
        for (j, bj) in b.iter().enumerate() {
            acc += BigRational::from_integer(binom.clone()) * bj;
            binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
        }
        b.push(-acc / BigRational::from_integer(BigInt::from(m + 1)));
    }
    b
}

pub(crate) fn bigint_enclosure(n: &BigInt) -> Interval {
    let f = n.to_f64().unwrap_or(f64::INFINITY);
    if num_traits::FromPrimitive::from_f64(f) == Some(n.clone()) {
        Interval::point(f)
    } else {
        Interval::from_ordered(f.next_down(), f.next_up())
    }
}

pub(crate) fn rational_enclosure(q: &BigRational) -> Interval {
    let num = bigint_enclosure(q.numer());
    let den = bigint_enclosure(q.denom());
    num.checked_div(&den)
        .expect("rational with zero denominator")
}

fn coefficients() -> &'static [Interval] {
    static COEFFS: OnceLock<Vec<Interval>> = OnceLock::new();
    COEFFS.get_or_init(|| {
        let b = bernoulli_numbers(2 * TERMS);
        let mut fact = BigInt::one(); // (2k)!
        let mut out = Vec::with_capacity(TERMS);
        for k in 1..=TERMS {
            fact = fact * BigInt::from(2 * k - 1) * BigInt::from(2 * k);
            let two_pow = BigInt::one() << (2 * k - 1);
            let num = b[2 * k].abs() * BigRational::from_integer(two_pow);
            let den = BigInt::from(k) * BigInt::from(2 * k + 1) * &fact;
            out.push(rational_enclosure(&(num / BigRational::from_integer(den))));
        }
        out
    })
}

/// Series evaluation for `0 < θ.lo`, `θ.hi ≤ 3π/4 + small`.
fn series(theta: Interval) -> Interval {
    debug_assert!(theta.lo() > 0.0);
    let c = coefficients();
    let t2 = theta.sqr();
    let mut poly = Interval::ZERO;
    for ck in c.iter().rev() {
        poly = poly * t2 + *ck;
    }
    let poly = poly * t2 * theta;
    let log_part = theta * (Interval::ONE - (theta.scale(2.0)).ln().expect("positive"));

    // tail bound with x = θ.hi / π
    let th = Interval::point(theta.hi());
    let x = th.checked_div(&Interval::pi()).expect("pi is nonzero");
    let k1 = TERMS as i64 + 1;
    let x_pow = x.powi(2 * k1 as u32);
    let denom = Interval::from_int(k1) * Interval::from_int(2 * k1 + 1) * (Interval::ONE - x.sqr());
    let tail = (th.scale(2.0) * x_pow)
        .checked_div(&denom)
        .expect("x < 1 on the reduced range");
    let tail = Interval::from_ordered(0.0, tail.hi());
    log_part + poly + tail
}

fn pi_over(n: i64) -> Interval {
    Interval::pi()
        .checked_div(&Interval::from_int(n))
        .expect("nonzero")
}

/// Enclosure of Л at an exact (point) argument in `[-3π/4, 3π/4]`.
fn eval_point(t: f64) -> Interval {
    if t == 0.0 {
        return Interval::ZERO;
    }
    if t < 0.0 {
        return -eval_point(-t);
    }
    let half_pi = pi_over(2);
    if t <= half_pi.lo() {
        series(Interval::point(t))
    } else {
        // Л(t) = -Л(π - t); π - t is a narrow interval in [π/4, π/2]
        let r = Interval::pi() - Interval::point(t);
        -series(r)
    }
}

/// Enclosure of `max |Л| = Л(π/6)`.
pub fn lobachevsky_max() -> Interval {
    static MAX: OnceLock<Interval> = OnceLock::new();
    *MAX.get_or_init(|| {
        let crit = pi_over(6);
        // |Л'| ≤ 1 near π/6, so padding by the width of the critical-point
        // enclosure covers the true maximum between the two endpoints.
        series(Interval::point(crit.lo()))
            .hull(&series(Interval::point(crit.hi())))
            .inflate(crit.width())
    })
}

/// Enclosure of Л(θ).
pub fn lobachevsky(theta: Interval) -> Result<Interval, RigorError> {
    if !theta.lo().is_finite() || !theta.hi().is_finite() {
        return Err(RigorError::Domain {
            op: "lobachevsky",
            operand: theta,
        });
    }
    let m = lobachevsky_max();
    let global = Interval::from_ordered(-m.hi(), m.hi());
    if theta.width() > std::f64::consts::FRAC_PI_2 {
        return Ok(global);
    }
    let k = (theta.mid() / std::f64::consts::PI).round();
    let reduced = if k == 0.0 {
        theta
    } else {
        theta - Interval::from_int(k as i64) * Interval::pi()
    };
    let mut out = eval_point(reduced.lo()).hull(&eval_point(reduced.hi()));
    let crit = pi_over(6);
    if crit.overlaps(&reduced) {
        out = out.hull(&m);
    }
    if (-crit).overlaps(&reduced) {
        out = out.hull(&-m);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_coefficients_are_exact_rationals() {
        let c = coefficients();
        assert!(c[0].contains(1.0 / 18.0));
        // c_2 = |B_4| 2^3 / (2 * 5 * 4!) = 1/900
        assert!(c[1].contains(1.0 / 900.0));
        assert!(c[0].width() < 1e-17);
    }

    #[test]
    fn bernoulli_small_values() {
        let b = bernoulli_numbers(6);
        let r = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
        assert_eq!(b[1], r(-1, 2));
        assert_eq!(b[2], r(1, 6));
        assert_eq!(b[3], r(0, 1));
        assert_eq!(b[4], r(-1, 30));
        assert_eq!(b[6], r(1, 42));
    }

    #[test]
    fn zero_and_half_pi() {
        assert_eq!(lobachevsky(Interval::ZERO).unwrap(), Interval::ZERO);
        let half_pi = pi_over(2);
        let v = lobachevsky(half_pi).unwrap();
        assert!(v.contains(0.0), "{v}");
        assert!(v.width() < 1e-14);
    }

    #[test]
    fn odd_and_periodic() {
        let t = Interval::point(0.7);
        let a = lobachevsky(t).unwrap();
        let b = lobachevsky(-t).unwrap();
        assert!(a.overlaps(&-b));
        let c = lobachevsky(t + Interval::pi().scale(3.0)).unwrap();
        assert!(a.overlaps(&c));
    }

    #[test]
    fn straddling_zero_uses_monotone_piece() {
        let v = lobachevsky(Interval::new(-1e-3, 2e-3).unwrap()).unwrap();
        assert!(v.contains(0.0));
        assert!(v.lo() < 0.0 && v.hi() > 0.0);
        assert!(v.hi() < 0.02);
    }
}

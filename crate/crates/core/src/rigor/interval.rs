//! Closed intervals of `f64` with outward rounding.
//!
//! The four basic operations and `sqrt` are correctly rounded in IEEE-754, so
//! an error-free transformation (`TwoSum`, or an `fma` residual) tells us on
//! which side of the rounded result the exact value lies. That gives true
//! directed rounding without touching the FPU rounding mode. Library
//! functions (`exp`, `ln`, `sin`, ...) are not correctly rounded; their
//! results are pushed outward by [`LIBM_ULPS`] units in the last place.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::RigorError;

/// Outward slack applied to every libm result. glibc documents errors of at
/// most one ulp for the functions used here.
pub const LIBM_ULPS: u32 = 2;

/// Below this magnitude the `fma` residual of a product or quotient may itself
/// be inexact, so we fall back to a plain one-ulp step.
const TINY: f64 = 1e-290;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

fn down_n(mut x: f64, n: u32) -> f64 {
    for _ in 0..n {
        x = x.next_down();
    }
    x
}

fn up_n(mut x: f64, n: u32) -> f64 {
    for _ in 0..n {
        x = x.next_up();
    }
    x
}

fn two_sum_err(a: f64, b: f64, s: f64) -> f64 {
    let bb = s - a;
    (a - (s - bb)) + (b - bb)
}

fn add_down(a: f64, b: f64) -> f64 {
    let s = a + b;
    if s.is_infinite() {
        return if s > 0.0 { f64::MAX } else { s };
    }
    if two_sum_err(a, b, s) < 0.0 {
        s.next_down()
    } else {
        s
    }
}

fn add_up(a: f64, b: f64) -> f64 {
    let s = a + b;
    if s.is_infinite() {
        return if s < 0.0 { f64::MIN } else { s };
    }
    if two_sum_err(a, b, s) > 0.0 {
        s.next_up()
    } else {
        s
    }
}

fn mul_down(a: f64, b: f64) -> f64 {
    if a == 0.0 || b == 0.0 {
        return 0.0;
    }
    let p = a * b;
    if p.is_infinite() {
        return if p > 0.0 { f64::MAX } else { p };
    }
    if p.abs() < TINY || a.mul_add(b, -p) < 0.0 {
        p.next_down()
    } else {
        p
    }
}

fn mul_up(a: f64, b: f64) -> f64 {
    if a == 0.0 || b == 0.0 {
        return 0.0;
    }
    let p = a * b;
    if p.is_infinite() {
        return if p < 0.0 { f64::MIN } else { p };
    }
    if p.abs() < TINY || a.mul_add(b, -p) > 0.0 {
        p.next_up()
    } else {
        p
    }
}

/// Sign of `exact - rounded` for `a / b`, derived from `a - q*b`.
fn div_residual_sign(a: f64, b: f64, q: f64) -> Ordering {
    if a == 0.0 {
        return Ordering::Equal;
    }
    if q == 0.0 || !q.is_finite() || q.abs() < TINY || a.abs() < TINY {
        return Ordering::Greater;
    }
    let r = (-q).mul_add(b, a);
    let s = if b > 0.0 { r } else { -r };
    s.partial_cmp(&0.0).unwrap_or(Ordering::Greater)
}

fn div_down(a: f64, b: f64) -> f64 {
    let q = a / b;
    if q.is_infinite() {
        return if q > 0.0 { f64::MAX } else { q };
    }
    if a != 0.0 && (q == 0.0 || q.abs() < TINY || a.abs() < TINY) {
        return q.next_down();
    }
    match div_residual_sign(a, b, q) {
        Ordering::Less => q.next_down(),
        _ => q,
    }
}

fn div_up(a: f64, b: f64) -> f64 {
    let q = a / b;
    if q.is_infinite() {
        return if q < 0.0 { f64::MIN } else { q };
    }
    if a != 0.0 && (q == 0.0 || q.abs() < TINY || a.abs() < TINY) {
        return q.next_up();
    }
    match div_residual_sign(a, b, q) {
        Ordering::Greater => q.next_up(),
        _ => q,
    }
}

fn sqrt_down(a: f64) -> f64 {
    let s = a.sqrt();
    if s == 0.0 || a.abs() < TINY {
        return if a == 0.0 {
            0.0
        } else {
            s.next_down().max(0.0)
        };
    }
    if (-s).mul_add(s, a) < 0.0 {
        s.next_down()
    } else {
        s
    }
}

fn sqrt_up(a: f64) -> f64 {
    let s = a.sqrt();
    if a == 0.0 {
        return 0.0;
    }
    if a.abs() < TINY {
        return s.next_up();
    }
    if (-s).mul_add(s, a) > 0.0 {
        s.next_up()
    } else {
        s
    }
}

impl Interval {
    pub const ZERO: Interval = Interval { lo: 0.0, hi: 0.0 };
    pub const ONE: Interval = Interval { lo: 1.0, hi: 1.0 };

    pub fn new(lo: f64, hi: f64) -> Result<Self, RigorError> {
        if lo.is_nan() || hi.is_nan() || lo > hi {
            return Err(RigorError::InvalidBounds { lo, hi });
        }
        Ok(Interval { lo, hi })
    }

    /// Panicking constructor for bounds known to be ordered.
    pub(crate) fn from_ordered(lo: f64, hi: f64) -> Self {
        debug_assert!(lo <= hi, "unordered interval [{lo}, {hi}]");
        Interval { lo, hi }
    }

    pub fn point(x: f64) -> Self {
        assert!(!x.is_nan(), "NaN point interval");
        Interval { lo: x, hi: x }
    }

    /// Exact enclosure of an integer (to within one ulp when |n| > 2^53).
    pub fn from_int(n: i64) -> Self {
        let x = n as f64;
        if x.abs() <= 9_007_199_254_740_992.0 {
            Interval::point(x)
        } else {
            Interval::from_ordered(x.next_down(), x.next_up())
        }
    }

    /// `mid ± rad` with outward rounding.
    pub fn mid_rad(mid: f64, rad: f64) -> Self {
        let rad = rad.abs();
        Interval::from_ordered(add_down(mid, -rad), add_up(mid, rad))
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn mid(&self) -> f64 {
        if self.lo == self.hi {
            self.lo
        } else {
            self.lo * 0.5 + self.hi * 0.5
        }
    }

    /// Upper bound on `hi - lo`.
    pub fn width(&self) -> f64 {
        add_up(self.hi, -self.lo)
    }

    /// Upper bound on the distance from [`Interval::mid`] to either endpoint.
    pub fn rad(&self) -> f64 {
        let m = self.mid();
        add_up(self.hi, -m).max(add_up(m, -self.lo))
    }

    pub fn mag(&self) -> f64 {
        self.lo.abs().max(self.hi.abs())
    }

    pub fn mig(&self) -> f64 {
        if self.contains_zero() {
            0.0
        } else {
            self.lo.abs().min(self.hi.abs())
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(0.0)
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn overlaps(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo <= hi).then_some(Interval { lo, hi })
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    /// Certified `self < other`.
    pub fn certainly_lt(&self, other: &Interval) -> bool {
        self.hi < other.lo
    }

    /// Certified `self > other`.
    pub fn certainly_gt(&self, other: &Interval) -> bool {
        self.lo > other.hi
    }

    pub fn is_positive(&self) -> bool {
        self.lo > 0.0
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    /// Enlarge by `eps` on both sides.
    pub fn inflate(&self, eps: f64) -> Interval {
        let eps = eps.abs();
        Interval {
            lo: add_down(self.lo, -eps),
            hi: add_up(self.hi, eps),
        }
    }

    /// Pointwise max, the enclosure of `max(x, y)`.
    pub fn max(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.max(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    pub fn min(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.min(other.lo),
            hi: self.hi.min(other.hi),
        }
    }

    pub fn abs(&self) -> Interval {
        if self.lo >= 0.0 {
            *self
        } else if self.hi <= 0.0 {
            -*self
        } else {
            Interval {
                lo: 0.0,
                hi: (-self.lo).max(self.hi),
            }
        }
    }

    pub fn sqr(&self) -> Interval {
        let a = self.abs();
        Interval {
            lo: mul_down(a.lo, a.lo),
            hi: mul_up(a.hi, a.hi),
        }
    }

    pub fn recip(&self) -> Result<Interval, RigorError> {
        Interval::ONE.checked_div(self)
    }

    pub fn checked_div(&self, rhs: &Interval) -> Result<Interval, RigorError> {
        if rhs.contains_zero() {
            return Err(RigorError::Domain {
                op: "div",
                operand: *rhs,
            });
        }
        let (a, b) = (self, rhs);
        let lo = div_down(a.lo, b.lo)
            .min(div_down(a.lo, b.hi))
            .min(div_down(a.hi, b.lo))
            .min(div_down(a.hi, b.hi));
        let hi = div_up(a.lo, b.lo)
            .max(div_up(a.lo, b.hi))
            .max(div_up(a.hi, b.lo))
            .max(div_up(a.hi, b.hi));
        Ok(Interval { lo, hi })
    }

    /// Multiply by a non-negative scalar known exactly.
    pub fn scale(&self, k: f64) -> Interval {
        *self * Interval::point(k)
    }

    pub fn sqrt(&self) -> Result<Interval, RigorError> {
        if self.lo < 0.0 {
            return Err(RigorError::Domain {
                op: "sqrt",
                operand: *self,
            });
        }
        Ok(Interval {
            lo: sqrt_down(self.lo),
            hi: sqrt_up(self.hi),
        })
    }

    pub fn exp(&self) -> Interval {
        let f = |x: f64, up: bool| -> f64 {
            if x == 0.0 {
                return 1.0;
            }
            let y = x.exp();
            if up {
                up_n(y, LIBM_ULPS)
            } else {
                down_n(y, LIBM_ULPS).max(0.0)
            }
        };
        Interval {
            lo: f(self.lo, false),
            hi: f(self.hi, true),
        }
    }

    pub fn ln(&self) -> Result<Interval, RigorError> {
        if self.lo <= 0.0 {
            return Err(RigorError::Domain {
                op: "log",
                operand: *self,
            });
        }
        let f = |x: f64, up: bool| -> f64 {
            if x == 1.0 {
                return 0.0;
            }
            let y = x.ln();
            if up {
                up_n(y, LIBM_ULPS)
            } else {
                down_n(y, LIBM_ULPS)
            }
        };
        Ok(Interval {
            lo: f(self.lo, false),
            hi: f(self.hi, true),
        })
    }

    /// Cube root, monotone on the whole line.
    pub fn cbrt(&self) -> Interval {
        let f = |x: f64, up: bool| -> f64 {
            if x == 0.0 || x == 1.0 || x == -1.0 {
                return x;
            }
            let y = x.cbrt();
            if up {
                up_n(y, LIBM_ULPS)
            } else {
                down_n(y, LIBM_ULPS)
            }
        };
        Interval {
            lo: f(self.lo, false),
            hi: f(self.hi, true),
        }
    }

    /// `x^(2/3)` for `x >= 0`.
    pub fn pow_two_thirds(&self) -> Result<Interval, RigorError> {
        if self.lo < 0.0 {
            return Err(RigorError::Domain {
                op: "pow(2/3)",
                operand: *self,
            });
        }
        Ok(self.sqr().cbrt())
    }

    /// `x^(3/2)` for `x >= 0`.
    pub fn pow_three_halves(&self) -> Result<Interval, RigorError> {
        if self.lo < 0.0 {
            return Err(RigorError::Domain {
                op: "pow(3/2)",
                operand: *self,
            });
        }
        Ok(*self * self.sqrt()?)
    }

    pub fn powi(&self, n: u32) -> Interval {
        if self.hi <= 0.0 {
            let m = (-*self).powi(n);
            return if n.is_multiple_of(2) { m } else { -m };
        }
        if self.lo < 0.0 {
            let neg = Interval::point(-self.lo).powi(n);
            let pos = Interval::point(self.hi).powi(n);
            return if n.is_multiple_of(2) {
                Interval {
                    lo: 0.0,
                    hi: neg.hi.max(pos.hi),
                }
            } else {
                Interval {
                    lo: -neg.hi,
                    hi: pos.hi,
                }
            };
        }
        // non-negative: square-and-multiply is monotone here
        let mut acc = Interval::ONE;
        let mut base = *self;
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base.sqr();
            e >>= 1;
        }
        acc
    }

    pub fn sin(&self) -> Interval {
        // maxima at pi/2 + 2k pi, minima at 3pi/2 + 2k pi
        trig_range(self, f64::sin, 0.5, 1.5)
    }

    pub fn cos(&self) -> Interval {
        trig_range(self, f64::cos, 0.0, 1.0)
    }

    /// `acos` on `[-1, 1]`; decreasing.
    pub fn acos(&self) -> Result<Interval, RigorError> {
        if self.lo > 1.0 || self.hi < -1.0 {
            return Err(RigorError::Domain {
                op: "acos",
                operand: *self,
            });
        }
        let lo_arg = self.hi.min(1.0);
        let hi_arg = self.lo.max(-1.0);
        let lo = if lo_arg == 1.0 {
            0.0
        } else {
            down_n(lo_arg.acos(), LIBM_ULPS).max(0.0)
        };
        let hi = up_n(hi_arg.acos(), LIBM_ULPS).min(Interval::pi().hi);
        Ok(Interval { lo, hi })
    }

    /// Enclosure of pi.
    pub fn pi() -> Interval {
        // f64 PI lies below pi; its successor lies above.
        Interval {
            lo: std::f64::consts::PI,
            hi: std::f64::consts::PI.next_up(),
        }
    }

    pub fn two_pi() -> Interval {
        Interval::pi() * Interval::point(2.0)
    }
}

/// Range of a 2pi-periodic function with maxima at `(2k + max_at) pi` and
/// minima at `(2k + min_at) pi`, values in [-1, 1].
fn trig_range(x: &Interval, f: fn(f64) -> f64, max_at: f64, min_at: f64) -> Interval {
    if !x.lo.is_finite() || !x.hi.is_finite() || x.hi - x.lo >= 6.0 {
        return Interval { lo: -1.0, hi: 1.0 };
    }
    let eval = |t: f64| -> Interval {
        if t == 0.0 {
            let v = f(0.0);
            return Interval::point(v);
        }
        let v = f(t);
        Interval {
            lo: down_n(v, LIBM_ULPS).max(-1.0),
            hi: up_n(v, LIBM_ULPS).min(1.0),
        }
    };
    let mut r = eval(x.lo).hull(&eval(x.hi));
    let two_pi = std::f64::consts::TAU;
    let pi = Interval::pi();
    let k0 = (x.lo / two_pi).floor() as i64 - 1;
    let k1 = (x.hi / two_pi).ceil() as i64 + 1;
    for k in k0..=k1 {
        let base = 2.0 * k as f64;
        let crit_max = pi * Interval::point(base + max_at);
        let crit_min = pi * Interval::point(base + min_at);
        if crit_max.overlaps(x) {
            r.hi = 1.0;
        }
        if crit_min.overlaps(x) {
            r.lo = -1.0;
        }
    }
    r
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval {
            lo: -self.hi,
            hi: -self.lo,
        }
    }
}

impl Add for Interval {
    type Output = Interval;
    fn add(self, rhs: Interval) -> Interval {
        Interval {
            lo: add_down(self.lo, rhs.lo),
            hi: add_up(self.hi, rhs.hi),
        }
    }
}

impl Sub for Interval {
    type Output = Interval;
    fn sub(self, rhs: Interval) -> Interval {
        Interval {
            lo: add_down(self.lo, -rhs.hi),
            hi: add_up(self.hi, -rhs.lo),
        }
    }
}

impl Mul for Interval {
    type Output = Interval;
    fn mul(self, rhs: Interval) -> Interval {
        let (a, b) = (self, rhs);
        let lo = mul_down(a.lo, b.lo)
            .min(mul_down(a.lo, b.hi))
            .min(mul_down(a.hi, b.lo))
            .min(mul_down(a.hi, b.hi));
        let hi = mul_up(a.lo, b.lo)
            .max(mul_up(a.lo, b.hi))
            .max(mul_up(a.hi, b.lo))
            .max(mul_up(a.hi, b.hi));
        Interval { lo, hi }
    }
}

impl std::iter::Sum for Interval {
    fn sum<I: Iterator<Item = Interval>>(iter: I) -> Interval {
        iter.fold(Interval::ZERO, |a, b| a + b)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e},{:e}]", self.lo, self.hi)
    }
}

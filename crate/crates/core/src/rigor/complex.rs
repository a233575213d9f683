use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{Interval, RigorError};

/// Axis-aligned rectangle enclosure of a complex number.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RigorousComplex {
    pub re: Interval,
    pub im: Interval,
}

impl RigorousComplex {
    pub const ZERO: RigorousComplex = RigorousComplex {
        re: Interval::ZERO,
        im: Interval::ZERO,
    };
    pub const ONE: RigorousComplex = RigorousComplex {
        re: Interval::ONE,
        im: Interval::ZERO,
    };

    pub fn new(re: Interval, im: Interval) -> Self {
        RigorousComplex { re, im }
    }

    pub fn point(re: f64, im: f64) -> Self {
        RigorousComplex {
            re: Interval::point(re),
            im: Interval::point(im),
        }
    }

    pub fn from_real(re: Interval) -> Self {
        RigorousComplex {
            re,
            im: Interval::ZERO,
        }
    }

    /// `exp(i * theta)` for an interval angle.
    pub fn cis(theta: Interval) -> Self {
        RigorousComplex {
            re: theta.cos(),
            im: theta.sin(),
        }
    }

    pub fn conj(&self) -> Self {
        RigorousComplex {
            re: self.re,
            im: -self.im,
        }
    }

    pub fn norm_sqr(&self) -> Interval {
        self.re.sqr() + self.im.sqr()
    }

    pub fn abs(&self) -> Interval {
        // norm_sqr is non-negative by construction
        self.norm_sqr().sqrt().expect("non-negative norm")
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    pub fn overlaps(&self, other: &RigorousComplex) -> bool {
        self.re.overlaps(&other.re) && self.im.overlaps(&other.im)
    }

    pub fn contains(&self, re: f64, im: f64) -> bool {
        self.re.contains(re) && self.im.contains(im)
    }

    /// Enlarge the rectangle by `eps` in both coordinates.
    pub fn inflate(&self, eps: f64) -> Self {
        RigorousComplex {
            re: self.re.inflate(eps),
            im: self.im.inflate(eps),
        }
    }

    pub fn scale(&self, k: Interval) -> Self {
        RigorousComplex {
            re: self.re * k,
            im: self.im * k,
        }
    }

    pub fn checked_div(&self, rhs: &RigorousComplex) -> Result<RigorousComplex, RigorError> {
        let den = rhs.norm_sqr();
        if den.contains_zero() {
            return Err(RigorError::Domain {
                op: "complex div",
                operand: den,
            });
        }
        let num = *self * rhs.conj();
        Ok(RigorousComplex {
            re: num.re.checked_div(&den)?,
            im: num.im.checked_div(&den)?,
        })
    }

    pub fn recip(&self) -> Result<RigorousComplex, RigorError> {
        RigorousComplex::ONE.checked_div(self)
    }

    /// Argument in `(-pi, pi]`.
    ///
    /// Rectangles containing the origin or touching the negative real axis
    /// (the branch cut) are rejected: the argument is not a continuous
    /// function there.
    pub fn arg(&self) -> Result<Interval, RigorError> {
        if self.contains_zero() {
            return Err(RigorError::Domain {
                op: "arg",
                operand: self.norm_sqr(),
            });
        }
        if self.im.contains_zero() && self.re.lo() < 0.0 {
            return Err(RigorError::Domain {
                op: "arg (branch cut)",
                operand: self.re,
            });
        }
        // The rectangle misses the origin and the cut, so arg is continuous on
        // it and its extremes sit at corners (the supporting rays from the
        // origin touch a convex polygon at vertices).
        let corners = [
            (self.re.lo(), self.im.lo()),
            (self.re.lo(), self.im.hi()),
            (self.re.hi(), self.im.lo()),
            (self.re.hi(), self.im.hi()),
        ];
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for (x, y) in corners {
            let a = atan2_enclosure(y, x);
            lo = lo.min(a.lo());
            hi = hi.max(a.hi());
        }
        Ok(Interval::from_ordered(lo, hi))
    }
}

fn atan2_enclosure(y: f64, x: f64) -> Interval {
    if y == 0.0 && x > 0.0 {
        return Interval::ZERO;
    }
    let a = y.atan2(x);
    let mut lo = a;
    let mut hi = a;
    for _ in 0..super::interval::LIBM_ULPS {
        lo = lo.next_down();
        hi = hi.next_up();
    }
    let pi = Interval::pi();
    Interval::from_ordered(lo.max(-pi.hi()), hi.min(pi.hi()))
}

impl Neg for RigorousComplex {
    type Output = RigorousComplex;
    fn neg(self) -> Self {
        RigorousComplex {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Add for RigorousComplex {
    type Output = RigorousComplex;
    fn add(self, rhs: Self) -> Self {
        RigorousComplex {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl Sub for RigorousComplex {
    type Output = RigorousComplex;
    fn sub(self, rhs: Self) -> Self {
        RigorousComplex {
            re: self.re - rhs.re,
            im: self.im - rhs.im,
        }
    }
}

impl Mul for RigorousComplex {
    type Output = RigorousComplex;
    fn mul(self, rhs: Self) -> Self {
        RigorousComplex {
            re: self.re * rhs.re - self.im * rhs.im,
            im: self.re * rhs.im + self.im * rhs.re,
        }
    }
}

impl fmt::Display for RigorousComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}i", self.re, self.im)
    }
}

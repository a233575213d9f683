use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::rigor::Interval;

/// An exact decimal number `mantissa × 10^exp`, normalized so the mantissa
/// has no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Decimal {
    mantissa: BigInt,
    exp: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecimalError(pub String);

impl fmt::Display for DecimalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Decimal {
    pub fn new(mantissa: BigInt, exp: i64) -> Self {
        let mut d = Decimal { mantissa, exp };
        d.normalize();
        d
    }

    pub fn zero() -> Self {
        Decimal::new(BigInt::zero(), 0)
    }

    fn normalize(&mut self) {
        if self.mantissa.is_zero() {
            self.exp = 0;
            return;
        }
        let ten = BigInt::from(10);
        loop {
            let (q, r) = self.mantissa.div_rem(&ten);
            if !r.is_zero() {
                break;
            }
            self.mantissa = q;
            self.exp += 1;
        }
    }

    /// The exact decimal value of a finite `f64`.
    pub fn from_f64(x: f64) -> Self {
        assert!(x.is_finite(), "non-finite value {x}");
        let r = BigRational::from_float(x).expect("finite");
        // denominators of binary fractions are powers of two: multiply by 5^k
        let den = r.denom().clone();
        let k = den.bits().saturating_sub(1) as u32;
        let num = r.numer() * BigInt::from(5).pow(k);
        Decimal::new(num, -(k as i64))
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    pub fn to_rational(&self) -> BigRational {
        let ten = BigInt::from(10);
        if self.exp >= 0 {
            BigRational::from_integer(&self.mantissa * ten.pow(self.exp as u32))
        } else {
            BigRational::new(self.mantissa.clone(), ten.pow((-self.exp) as u32))
        }
    }

    /// Tightest `f64` interval containing the value: a point when the decimal
    /// is exactly representable, otherwise the two neighbouring floats.
    pub fn enclosure(&self) -> Interval {
        let nearest: f64 = self.to_string().parse().expect("canonical decimal");
        if !nearest.is_finite() {
            return Interval::from_ordered(
                if nearest > 0.0 {
                    f64::MAX
                } else {
                    f64::NEG_INFINITY
                },
                if nearest > 0.0 {
                    f64::INFINITY
                } else {
                    f64::MIN
                },
            );
        }
        let exact = self.to_rational();
        let approx = BigRational::from_float(nearest).expect("finite");
        match approx.cmp(&exact) {
            std::cmp::Ordering::Equal => Interval::point(nearest),
            std::cmp::Ordering::Less => Interval::from_ordered(nearest, nearest.next_up()),
            std::cmp::Ordering::Greater => Interval::from_ordered(nearest.next_down(), nearest),
        }
    }

    fn digits(&self) -> String {
        self.mantissa.abs().to_string()
    }
}

impl fmt::Display for Decimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mantissa.is_zero() {
            return f.write_str("0");
        }
        let sign = if self.is_negative() { "-" } else { "" };
        let digits = self.digits();
        let n = digits.len() as i64;
        // position of the decimal point relative to the start of `digits`
        let point = n + self.exp;
        if self.exp >= 0 && point <= 30 {
            write!(f, "{sign}{digits}{}", "0".repeat(self.exp as usize))
        } else if self.exp < 0 && point > 0 {
            let (int, frac) = digits.split_at(point as usize);
            write!(f, "{sign}{int}.{frac}")
        } else if self.exp < 0 && point > -6 {
            write!(f, "{sign}0.{}{digits}", "0".repeat((-point) as usize))
        } else {
            let (lead, rest) = digits.split_at(1);
            let e = point - 1;
            if rest.is_empty() {
                write!(f, "{sign}{lead}e{e}")
            } else {
                write!(f, "{sign}{lead}.{rest}e{e}")
            }
        }
    }
}

impl FromStr for Decimal {
    type Err = DecimalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || DecimalError(format!("malformed decimal number '{s}'"));
        let (body, exp) = match s.find(['e', 'E']) {
            Some(k) => {
                let e: i64 = s[k + 1..].parse().map_err(|_| err())?;
                if e.abs() > 100_000 {
                    return Err(DecimalError(format!("exponent out of range in '{s}'")));
                }
                (&s[..k], e)
            }
            None => (s, 0),
        };
        let (negative, body) = match body.as_bytes().first() {
            Some(b'-') => (true, &body[1..]),
            Some(b'+') => (false, &body[1..]),
            _ => (false, body),
        };
        let (int, frac) = match body.find('.') {
            Some(k) => (&body[..k], &body[k + 1..]),
            None => (body, ""),
        };
        if int.is_empty() && frac.is_empty() {
            return Err(err());
        }
        if !int.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let all = format!("{int}{frac}");
        let mut mantissa: BigInt = if all.is_empty() {
            BigInt::zero()
        } else {
            all.parse().map_err(|_| err())?
        };
        if negative {
            mantissa = -mantissa;
        }
        Ok(Decimal::new(mantissa, exp - frac.len() as i64))
    }
}

/// `mid±rad`, the textual form of every interval in input files.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DecimalInterval {
    pub mid: Decimal,
    pub rad: Decimal,
}

impl DecimalInterval {
    pub fn exact(mid: Decimal) -> Self {
        DecimalInterval {
            mid,
            rad: Decimal::zero(),
        }
    }

    pub fn to_interval(&self) -> Interval {
        let m = self.mid.enclosure();
        let r = self.rad.enclosure().hi();
        if r == 0.0 {
            m
        } else {
            m + Interval::from_ordered(-r, r)
        }
    }

    /// A decimal interval enclosing `x`, with the midpoint written to 30
    /// significant digits.
    pub fn enclosing(x: &Interval) -> Self {
        if x.is_point() {
            return DecimalInterval::exact(Decimal::from_f64(x.lo()));
        }
        let lo = BigRational::from_float(x.lo()).expect("finite");
        let hi = BigRational::from_float(x.hi()).expect("finite");
        let two = BigRational::from_integer(BigInt::from(2));
        let mid = round_sig(&((&lo + &hi) / two), 30);
        let q = mid.to_rational();
        let spread = if &hi - &q > &q - &lo {
            &hi - &q
        } else {
            &q - &lo
        };
        let rad = round_up_sig(&spread, 3);
        DecimalInterval { mid, rad }
    }
}

/// Round to `sig` significant digits (half away from zero).
fn round_sig(x: &BigRational, sig: u32) -> Decimal {
    if x.is_zero() {
        return Decimal::zero();
    }
    let e = decimal_exponent(x) - sig as i64 + 1;
    let scaled = x / pow10(e);
    Decimal::new(scaled.round().to_integer(), e)
}

/// Round a non-negative rational up to `sig` significant digits.
fn round_up_sig(x: &BigRational, sig: u32) -> Decimal {
    if x.is_zero() {
        return Decimal::zero();
    }
    let e = decimal_exponent(x) - sig as i64 + 1;
    let scaled = x / pow10(e);
    Decimal::new(scaled.ceil().to_integer(), e)
}

fn pow10(e: i64) -> BigRational {
    let ten = BigInt::from(10);
    if e >= 0 {
        BigRational::from_integer(ten.pow(e as u32))
    } else {
        BigRational::new(BigInt::from(1), ten.pow((-e) as u32))
    }
}

/// `floor(log10 |x|)` for nonzero `x`.
fn decimal_exponent(x: &BigRational) -> i64 {
    let a = x.abs();
    let approx = a.to_f64().map(|f| f.log10().floor() as i64).unwrap_or(0);
    let mut e = approx;
    while pow10(e) > a {
        e -= 1;
    }
    while pow10(e + 1) <= a {
        e += 1;
    }
    e
}

impl fmt::Display for DecimalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}±{}", self.mid, self.rad)
    }
}

impl FromStr for DecimalInterval {
    type Err = DecimalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (mid, rad) = if let Some(k) = s.find('±') {
            (&s[..k], Some(&s[k + '±'.len_utf8()..]))
        } else if let Some(k) = s.find("+-") {
            (&s[..k], Some(&s[k + 2..]))
        } else {
            (s, None)
        };
        let mid: Decimal = mid.parse()?;
        let rad: Decimal = match rad {
            Some(r) => r.parse()?,
            None => Decimal::zero(),
        };
        if rad.is_negative() {
            return Err(DecimalError(format!("negative radius in '{s}'")));
        }
        Ok(DecimalInterval { mid, rad })
    }
}

//! Dehn-filling slopes below the FKP length cutoff and the resulting volume
//! inequalities, including the passage to closed manifolds.

use std::fmt;

use num_integer::Integer;
use rayon::prelude::*;
use thiserror::Error;

use crate::rigor::{Interval, RigorError, RigorousComplex};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FillingError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Rigor(#[from] RigorError),
}

/// Translations of a maximal cusp torus.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CuspShape {
    pub mu: RigorousComplex,
    pub lambda: RigorousComplex,
}

impl CuspShape {
    pub fn new(mu: RigorousComplex, lambda: RigorousComplex) -> Result<Self, FillingError> {
        let shape = CuspShape { mu, lambda };
        let area = shape.area();
        if area.lo() <= 0.0 {
            return Err(FillingError::Precondition(format!(
                "Im(conj(mu) lambda) = {area} is not certified positive"
            )));
        }
        Ok(shape)
    }

    /// Area of the torus, `Im(conj(mu) lambda)`.
    pub fn area(&self) -> Interval {
        (self.mu.conj() * self.lambda).im
    }

    /// Largest `|p|` and `|q|` a slope of length at most `cutoff` can have.
    ///
    /// `|p mu + q lambda|` is at least `|q|` times the height of `lambda`
    /// over the line through `mu`, which is `area / |mu|`, and symmetrically
    /// for `p`. So `|q| <= cutoff |mu| / area` and `|p| <= cutoff |lambda| / area`.
    pub fn search_box(&self, cutoff: f64) -> Result<(i64, i64), FillingError> {
        let area = self.area();
        let c = Interval::point(cutoff);
        let p = (c * self.lambda.abs()).checked_div(&area)?.hi().floor();
        let q = (c * self.mu.abs()).checked_div(&area)?.hi().floor();
        if !(p.is_finite() && q.is_finite()) || p * q > 1e9 {
            return Err(FillingError::Precondition(format!(
                "search box {p} x {q} is too large for cutoff {cutoff}"
            )));
        }
        Ok((p as i64, q as i64))
    }
}

/// A filling slope `p mu + q lambda`, primitive, with the first nonzero
/// coordinate positive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Slope {
    pub p: i64,
    pub q: i64,
}

impl Slope {
    pub fn new(p: i64, q: i64) -> Result<Self, FillingError> {
        if p.gcd(&q) != 1 {
            return Err(FillingError::Precondition(format!(
                "({p}, {q}) is not a primitive class"
            )));
        }
        Ok(if p < 0 || (p == 0 && q < 0) {
            Slope { p: -p, q: -q }
        } else {
            Slope { p, q }
        })
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

pub fn slope_length(shape: &CuspShape, s: Slope) -> Interval {
    (shape.mu.scale(Interval::from_int(s.p)) + shape.lambda.scale(Interval::from_int(s.q))).abs()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SlopeFlag {
    Ok,
    /// The length enclosure straddles the cutoff.
    Borderline,
}

impl fmt::Display for SlopeFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SlopeFlag::Ok => "OK",
            SlopeFlag::Borderline => "BORDERLINE",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ShortSlope {
    pub slope: Slope,
    pub length: Interval,
    pub flag: SlopeFlag,
}

impl fmt::Display for ShortSlope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "SLOPE {} length={} flag={}",
            self.slope, self.length, self.flag
        )
    }
}

/// Every slope whose length may be at most `cutoff`. Slopes not certainly
/// within the cutoff are kept and flagged [`SlopeFlag::Borderline`]. Sorted
/// by `(p, q)`.
pub fn enumerate_short_slopes(
    shape: &CuspShape,
    cutoff: Interval,
) -> Result<Vec<ShortSlope>, FillingError> {
    if !cutoff.hi().is_finite() {
        return Err(FillingError::Precondition(format!(
            "cutoff {cutoff} is not finite"
        )));
    }
    if cutoff.hi() < 0.0 {
        return Ok(Vec::new());
    }
    let (pmax, qmax) = shape.search_box(cutoff.hi())?;
    let out = (0..=pmax)
        .into_par_iter()
        .flat_map_iter(|p| {
            let qmin = if p == 0 { 1 } else { -qmax };
            (qmin..=qmax).filter_map(move |q| {
                if p.gcd(&q) != 1 {
                    return None;
                }
                let slope = Slope { p, q };
                let length = slope_length(shape, slope);
                (length.lo() <= cutoff.hi()).then(|| ShortSlope {
                    slope,
                    length,
                    flag: if length.hi() <= cutoff.lo() {
                        SlopeFlag::Ok
                    } else {
                        SlopeFlag::Borderline
                    },
                })
            })
        })
        .collect();
    Ok(out)
}

/// Cutoff `L` on slope lengths with a filling of volume below `vol_target`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FillingBound {
    pub length_cutoff: Interval,
    pub vol_parent: Interval,
    pub vol_target: Interval,
}

impl fmt::Display for FillingBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FKP cutoff={} parentvol={} targetvol={}",
            self.length_cutoff, self.vol_parent, self.vol_target
        )
    }
}

/// Slopes whose filling may have volume at most `vol_target` have length at
/// most `2π / sqrt(1 − (vol_target / vol_parent)^(2/3))`. This is the
/// unconditional form; the volume bound it inverts was first stated for
/// slopes longer than 2π.
pub fn fkp_length_cutoff(
    vol_parent: Interval,
    vol_target: Interval,
) -> Result<FillingBound, FillingError> {
    if vol_target.hi() <= 0.0 || vol_target.lo() < 0.0 {
        return Err(FillingError::Precondition(format!(
            "target volume {vol_target} is not positive"
        )));
    }
    if !vol_target.certainly_lt(&vol_parent) {
        return Err(FillingError::Precondition(format!(
            "target volume {vol_target} is not certainly below parent volume {vol_parent}"
        )));
    }
    let ratio = vol_target.checked_div(&vol_parent)?;
    let gap = Interval::ONE - ratio.pow_two_thirds()?;
    let two_pi = Interval::two_pi();
    let cutoff = two_pi.checked_div(&gap.sqrt()?)?;
    Ok(FillingBound {
        length_cutoff: cutoff.max(&two_pi),
        vol_parent,
        vol_target,
    })
}

/// `(1 − (2π / l_min)²)^(3/2) · vol_parent`, a lower bound on the volume
/// of any filling along slopes of length at least `l_min > 2π`.
pub fn fkp_volume_lower_bound(
    vol_parent: Interval,
    min_slope_length: Interval,
) -> Result<Interval, FillingError> {
    let two_pi = Interval::two_pi();
    if !min_slope_length.certainly_gt(&two_pi) {
        return Err(FillingError::Precondition(format!(
            "minimal slope length {min_slope_length} is not certainly above 2π"
        )));
    }
    let x = two_pi.checked_div(&min_slope_length)?.sqr();
    let factor = (Interval::ONE - x)
        .max(&Interval::ZERO)
        .pow_three_halves()?;
    Ok(factor * vol_parent)
}

/// The volume ratio between a closed manifold and the cusped manifold
/// obtained by drilling a short geodesic, as the exact fraction 302/100.
pub fn drilling_ratio() -> Interval {
    Interval::from_int(302)
        .checked_div(&Interval::from_int(100))
        .expect("nonzero divisor")
}

/// Lower bound on a closed manifold's volume from a lower bound on the
/// cusped manifold obtained by drilling its shortest geodesic. The drilling
/// inequality assumes an embedded tube of radius at least log(3)/2 about
/// that geodesic; this is recorded, not checked.
pub fn closed_volume_chain(cusped_lower_bound: Interval) -> Result<Interval, FillingError> {
    if cusped_lower_bound.lo() < 0.0 {
        return Err(FillingError::Precondition(format!(
            "cusped volume bound {cusped_lower_bound} is negative"
        )));
    }
    Ok(cusped_lower_bound.checked_div(&drilling_ratio())?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rect(a: f64, b: f64) -> CuspShape {
        CuspShape::new(
            RigorousComplex::point(a, 0.0),
            RigorousComplex::point(0.0, b),
        )
        .unwrap()
    }

    #[test]
    fn basis_lengths() {
        let s = rect(1.0, 6.0);
        assert!(slope_length(&s, Slope::new(1, 0).unwrap()).contains(1.0));
        let s = rect(6.0, 6.0);
        let l = slope_length(&s, Slope::new(1, 1).unwrap());
        assert!(
            l.contains(6.0 * 2f64.sqrt()) || l.overlaps(&Interval::point(72.0).sqrt().unwrap())
        );
    }

    #[test]
    fn slope_normalization() {
        assert_eq!(Slope::new(-2, 3).unwrap(), Slope { p: 2, q: -3 });
        assert_eq!(Slope::new(0, -1).unwrap(), Slope { p: 0, q: 1 });
        assert!(Slope::new(2, 4).is_err());
        assert!(Slope::new(0, 0).is_err());
    }

    #[test]
    fn square_lattice_short_slopes() {
        let got = enumerate_short_slopes(&rect(6.0, 6.0), Interval::point(6.5)).unwrap();
        let slopes: Vec<(i64, i64)> = got.iter().map(|s| (s.slope.p, s.slope.q)).collect();
        assert_eq!(slopes, vec![(0, 1), (1, 0)]);
        assert!(got.iter().all(|s| s.flag == SlopeFlag::Ok));
        assert!(
            enumerate_short_slopes(&rect(6.0, 6.0), Interval::point(5.9))
                .unwrap()
                .is_empty()
        );
    }

    #[test]
    fn straddling_slope_is_borderline() {
        let got =
            enumerate_short_slopes(&rect(6.0, 7.0), Interval::new(5.9, 6.1).unwrap()).unwrap();
        assert_eq!(got.len(), 1);
        assert_eq!(got[0].flag, SlopeFlag::Borderline);
        assert_eq!(
            got[0].to_string(),
            format!("SLOPE 1/0 length={} flag=BORDERLINE", got[0].length)
        );
    }

    #[test]
    fn cutoff_limits_and_errors() {
        let tiny = fkp_length_cutoff(Interval::point(2.0), Interval::point(1e-30)).unwrap();
        assert!(tiny.length_cutoff.lo() >= Interval::two_pi().lo());
        assert!(tiny.length_cutoff.hi() - Interval::two_pi().hi() < 1e-12);
        let v = Interval::point(2.848);
        assert!(fkp_length_cutoff(v, v).is_err());
        assert!(fkp_length_cutoff(Interval::point(1.0), Interval::point(2.0)).is_err());
    }

    #[test]
    fn volume_bound_limits() {
        let parent = Interval::point(2.0299);
        let far = fkp_volume_lower_bound(parent, Interval::point(1e9)).unwrap();
        assert!(far.hi() <= parent.hi() && parent.lo() - far.lo() < 1e-15 * 1e3);
        let near = fkp_volume_lower_bound(
            parent,
            Interval::point(Interval::two_pi().hi() * (1.0 + 1e-9)),
        )
        .unwrap();
        assert!(near.hi() < 1e-5);
        assert!(fkp_volume_lower_bound(parent, Interval::point(6.0)).is_err());
    }

    #[test]
    fn chain_values() {
        assert!(closed_volume_chain(Interval::point(2.848)).unwrap().lo() > 0.943);
        assert!(closed_volume_chain(Interval::point(3.02))
            .unwrap()
            .contains(1.0));
        assert!(closed_volume_chain(Interval::ZERO).unwrap().contains(0.0));
        assert!(closed_volume_chain(Interval::point(-1.0)).is_err());
    }
}

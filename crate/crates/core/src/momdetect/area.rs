use std::fmt;

use crate::rigor::Interval;

use super::MomError;

/// Facts about the diagram that unlock the stronger bounds.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct AreaFlags {
    /// No `(1,1,1)` triples, so full-sized shadows meet at distance ≥ e_2.
    pub no_equilateral_triples: bool,
    /// Centers of full-sized shadows are at least `e_2` apart.
    pub center_distance_at_least_e2: bool,
    /// Add the two-disk union bound for radius `e_3/2` disks.
    pub overlap_refinement: bool,
    /// Request the small-`e_2` branch, which has no closed form yet.
    pub small_e2_branch: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AreaCase {
    Baseline,
    NoTripleImprovement,
    OverlapRefinement,
    SmallE2Placeholder,
}

impl fmt::Display for AreaCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AreaCase::Baseline => "baseline",
            AreaCase::NoTripleImprovement => "no-triple",
            AreaCase::OverlapRefinement => "overlap",
            AreaCase::SmallE2Placeholder => "small-e2-placeholder",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AreaBoundReport {
    pub area_lower: Interval,
    pub volume_lower: Interval,
    pub case: AreaCase,
}

impl fmt::Display for AreaBoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "BOUND area={} volume={} case={}",
            self.area_lower, self.volume_lower, self.case
        )
    }
}

/// Area of the intersection of two disks of radius `r` at center distance
/// `d ≤ 2r`: `2r² acos(d/2r) − (d/2) sqrt(4r² − d²)`.
pub(crate) fn lens(r: Interval, d: Interval) -> Result<Interval, MomError> {
    let domain = |e| MomError::Precondition(format!("lens: {e}"));
    let ratio = d.checked_div(&r.scale(2.0)).map_err(domain)?;
    let ratio = ratio
        .intersect(&Interval::new(-1.0, 1.0).expect("ordered"))
        .ok_or_else(|| MomError::Precondition(format!("disks at distance {d} do not meet")))?;
    let disc = (r.sqr().scale(4.0) - d.sqr())
        .intersect(&Interval::new(0.0, f64::MAX).expect("ordered"))
        .unwrap_or(Interval::ZERO);
    let angle = ratio.acos().map_err(domain)?;
    Ok(r.sqr().scale(2.0) * angle - d.scale(0.5) * disc.sqrt().map_err(domain)?)
}

/// Lower bound on the area of the maximal cusp torus, and half of it as a
/// bound on the cusp volume.
///
/// The baseline is the circle-packing bound `√3`. With the no-`(1,1,1)` facts
/// the full-sized shadows are `e_2` apart and the bound scales to `√3 e_2²`.
/// The optional refinement counts two disks of radius `e_3/2` overlapping at
/// most once at distance `e_2`. Since `e_2 ≥ 1` holds for every maximal cusp,
/// an enclosure reaching slightly below 1 is clipped to `[1, ∞)`.
pub fn area_lower_bound(
    e2: Interval,
    e3: Interval,
    flags: AreaFlags,
) -> Result<AreaBoundReport, MomError> {
    const SLACK: f64 = 1e-12;
    if e2.lo() < 1.0 - SLACK {
        return Err(MomError::Precondition(format!(
            "e2 = {e2} is not certified to be at least 1"
        )));
    }
    let e2 = e2
        .intersect(&Interval::new(1.0, f64::MAX).expect("ordered"))
        .ok_or_else(|| MomError::Precondition(format!("e2 = {e2} is below 1")))?;
    if e3.hi() < e2.lo() {
        return Err(MomError::Precondition(format!(
            "e3 = {e3} is below e2 = {e2}"
        )));
    }
    let sqrt3 = Interval::point(3.0).sqrt().expect("positive");
    let mut area = sqrt3;
    let mut case = AreaCase::Baseline;
    if flags.no_equilateral_triples && flags.center_distance_at_least_e2 {
        area = sqrt3 * e2.sqr();
        case = AreaCase::NoTripleImprovement;
    }
    if flags.overlap_refinement {
        let r = e3.scale(0.5);
        let two_disks = Interval::pi().scale(0.5) * e3.sqr();
        let refined = two_disks - lens(r, e2)?;
        if refined.lo() > area.lo() {
            case = AreaCase::OverlapRefinement;
        }
        area = area.max(&refined);
    }
    if flags.small_e2_branch {
        case = AreaCase::SmallE2Placeholder;
    }
    Ok(AreaBoundReport {
        area_lower: area,
        volume_lower: area.scale(0.5),
        case,
    })
}

//! Upper-half-space horoball model: cusp diagrams, orthodistances, the
//! orthopair spectrum, shadows and typed horoball triples.
//!
//! The base horoball `B_∞` is the region above height 1. A finite horoball is
//! a Euclidean ball tangent to the boundary plane at `center` with Euclidean
//! `diameter`. Two such balls with centers `c_a`, `c_b` and diameters `d_a`,
//! `d_b` lie at hyperbolic distance `2 log(|c_a - c_b| / sqrt(d_a d_b))`;
//! a ball of diameter `d` lies at distance `-log d` from `B_∞`.

mod diagram;
mod spectrum;
mod triples;
mod validate;

use thiserror::Error;

use crate::rigor::{Interval, RigorError, RigorousComplex};

pub use diagram::{CuspDiagram, CuspLattice, DiagramBall, Symmetry};
pub use spectrum::{finite_pairs, ortho_spectrum, OrthopairClass, PairWitness, Spectrum};
pub use triples::{center_distance_of_triple, enumerate_triples, TripleClass, TripleWitness};
pub use validate::{validate_diagram, ValidationFailure, ValidationReport};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error(transparent)]
    Rigor(#[from] RigorError),
    #[error("orthodistance between the base horoball and itself is undefined")]
    BothAtInfinity,
    #[error("balls {i} and {j} (translate {p},{q}) have coincident centers")]
    DegeneratePair { i: usize, j: usize, p: i64, q: i64 },
    #[error("the base horoball has no shadow")]
    NoShadow,
    #[error("ambiguous spectrum: {0}")]
    AmbiguousSpectrum(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("invalid lattice: {0}")]
    InvalidLattice(String),
    #[error("invalid symmetry #{index}: {reason}")]
    InvalidSymmetry { index: usize, reason: String },
    #[error("precondition violated: {0}")]
    Precondition(String),
}

/// A horoball in the upper half-space model.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Horoball {
    /// `B_∞`, the region above height 1.
    AtInfinity,
    Finite {
        center: RigorousComplex,
        diameter: Interval,
    },
}

impl Horoball {
    pub fn finite(center: RigorousComplex, diameter: Interval) -> Self {
        Horoball::Finite { center, diameter }
    }
}

/// Disk on `∂B_∞` lying under a finite horoball.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Shadow {
    pub center: RigorousComplex,
    pub radius: Interval,
}

/// Enclosure of `log(|Δ|² / (d_a d_b))` where `Δ` is a center offset.
pub(crate) fn ortho_from_offset(
    offset: &RigorousComplex,
    d_a: Interval,
    d_b: Interval,
) -> Result<Option<Interval>, RigorError> {
    let n2 = offset.norm_sqr();
    if n2.lo() <= 0.0 {
        return Ok(None);
    }
    Ok(Some(n2.checked_div(&(d_a * d_b))?.ln()?))
}

/// Hyperbolic distance between two horoballs. Negative values (overlapping
/// balls) are returned as computed.
pub fn orthodistance(a: &Horoball, b: &Horoball) -> Result<Interval, GeometryError> {
    match (a, b) {
        (Horoball::AtInfinity, Horoball::AtInfinity) => Err(GeometryError::BothAtInfinity),
        (Horoball::Finite { diameter, .. }, Horoball::AtInfinity)
        | (Horoball::AtInfinity, Horoball::Finite { diameter, .. }) => Ok(-diameter.ln()?),
        (
            Horoball::Finite {
                center: ca,
                diameter: da,
            },
            Horoball::Finite {
                center: cb,
                diameter: db,
            },
        ) => ortho_from_offset(&(*ca - *cb), *da, *db)?.ok_or(GeometryError::DegeneratePair {
            i: 0,
            j: 1,
            p: 0,
            q: 0,
        }),
    }
}

/// Shadow of a finite horoball, computed both as `½ e^{-o}` and as half the
/// diameter; the two enclosures must agree.
pub fn shadow_of(a: &Horoball) -> Result<Shadow, GeometryError> {
    let Horoball::Finite { center, diameter } = a else {
        return Err(GeometryError::NoShadow);
    };
    let o = orthodistance(a, &Horoball::AtInfinity)?;
    let from_ortho = (-o).exp().scale(0.5);
    let from_diam = diameter.scale(0.5);
    let radius = from_ortho.intersect(&from_diam).ok_or_else(|| {
        GeometryError::Inconsistent(format!(
            "shadow radius {from_ortho} (from orthodistance) vs {from_diam} (from diameter)"
        ))
    })?;
    Ok(Shadow {
        center: *center,
        radius,
    })
}

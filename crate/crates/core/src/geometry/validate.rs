use std::fmt;

use crate::rigor::Interval;

use super::{
    enumerate_triples, finite_pairs, ortho_spectrum, shadow_of, CuspDiagram, GeometryError,
    PairWitness,
};

#[derive(Clone, Debug, PartialEq)]
pub enum ValidationFailure {
    /// No ball is certified tangent to `B_∞`.
    NoTangency {
        largest_diameter: Option<Interval>,
    },
    /// A ball may reach above the base horosphere.
    AboveBase {
        ball: usize,
        diameter: Interval,
    },
    /// Two horoballs certainly overlap.
    Overlap {
        pair: PairWitness,
        ortho: Interval,
    },
    /// A triple class of type `(m, m, m)`.
    EquilateralTriple {
        index: usize,
        multiplicity: usize,
    },
    ShadowMismatch {
        ball: usize,
        reason: String,
    },
    /// The spectrum or triples could not be computed.
    Spectrum(GeometryError),
}

impl fmt::Display for ValidationFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidationFailure::NoTangency { largest_diameter } => match largest_diameter {
                Some(d) => write!(
                    f,
                    "no ball tangent to the base horoball (largest diameter {d})"
                ),
                None => write!(f, "diagram has no balls"),
            },
            ValidationFailure::AboveBase { ball, diameter } => {
                write!(f, "ball {ball} has diameter {diameter} > 1")
            }
            ValidationFailure::Overlap { pair, ortho } => {
                write!(f, "horoballs {pair:?} overlap (orthodistance {ortho})")
            }
            ValidationFailure::EquilateralTriple {
                index,
                multiplicity,
            } => write!(
                f,
                "{multiplicity} triple class(es) of type ({index},{index},{index})"
            ),
            ValidationFailure::ShadowMismatch { ball, reason } => {
                write!(f, "shadow check failed for ball {ball}: {reason}")
            }
            ValidationFailure::Spectrum(e) => write!(f, "spectrum: {e}"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ValidationReport {
    pub failures: Vec<ValidationFailure>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks tangency, embeddedness, absence of `(m, m, m)` triples and shadow
/// consistency. Triples are examined up to the largest ball orthodistance.
pub fn validate_diagram(d: &CuspDiagram) -> ValidationReport {
    let mut failures = Vec::new();

    let largest = d
        .balls
        .iter()
        .map(|b| b.diameter)
        .reduce(|a, b| if b.hi() > a.hi() { b } else { a });
    if !d.balls.iter().any(|b| b.diameter.contains(1.0)) {
        failures.push(ValidationFailure::NoTangency {
            largest_diameter: largest,
        });
    }
    for (ball, b) in d.balls.iter().enumerate() {
        if b.diameter.lo() > 1.0 {
            failures.push(ValidationFailure::AboveBase {
                ball,
                diameter: b.diameter,
            });
        }
        if let Err(e) = shadow_of(&b.horoball()) {
            failures.push(ValidationFailure::ShadowMismatch {
                ball,
                reason: e.to_string(),
            });
        }
    }

    match finite_pairs(d, Interval::ZERO) {
        Ok(pairs) => {
            for (pair, ortho) in pairs {
                if ortho.hi() < 0.0 {
                    failures.push(ValidationFailure::Overlap { pair, ortho });
                }
            }
        }
        Err(e) => failures.push(ValidationFailure::Spectrum(e)),
    }

    if failures.is_empty() {
        let cutoff = d
            .balls
            .iter()
            .map(|b| -b.diameter.lo().ln())
            .fold(0.0f64, f64::max);
        let cutoff = cutoff * (1.0 + 1e-9) + 1e-12;
        let triples =
            ortho_spectrum(d, Interval::point(cutoff)).and_then(|s| enumerate_triples(d, &s));
        match triples {
            Ok(classes) => {
                for c in classes {
                    if c.kind[0] == c.kind[2] {
                        failures.push(ValidationFailure::EquilateralTriple {
                            index: c.kind[0],
                            multiplicity: c.multiplicity,
                        });
                    }
                }
            }
            Err(e) => failures.push(ValidationFailure::Spectrum(e)),
        }
    }
    ValidationReport { failures }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{CuspLattice, DiagramBall};
    use crate::rigor::RigorousComplex;

    fn diagram(balls: &[(f64, f64, f64)]) -> CuspDiagram {
        let lattice = CuspLattice::new(
            RigorousComplex::point(10.0, 0.0),
            RigorousComplex::point(0.0, 10.0),
        )
        .unwrap();
        CuspDiagram::new(
            lattice,
            balls
                .iter()
                .map(|&(x, y, d)| DiagramBall {
                    center: RigorousComplex::point(x, y),
                    diameter: Interval::point(d),
                    label: Some(1),
                })
                .collect(),
        )
    }

    #[test]
    fn small_largest_ball_is_not_maximal() {
        let mut d = diagram(&[(0.0, 0.0, 1.0)]);
        d.balls[0].diameter = Interval::new(0.9, 0.9).unwrap();
        let r = validate_diagram(&d);
        assert!(matches!(
            r.failures[0],
            ValidationFailure::NoTangency { .. }
        ));
    }

    #[test]
    fn overlapping_balls_rejected() {
        let r = validate_diagram(&diagram(&[(0.0, 0.0, 1.0), (0.5, 0.0, 1.0)]));
        assert!(r
            .failures
            .iter()
            .any(|f| matches!(f, ValidationFailure::Overlap { .. })));
    }

    #[test]
    fn equilateral_triple_detected() {
        let h = 0.75f64.sqrt();
        let mut d = diagram(&[(0.0, 0.0, 1.0), (1.0, 0.0, 1.0), (0.5, h, 1.0)]);
        // exact-ish tangencies: allow the rounding of h
        for b in &mut d.balls {
            b.center = b.center.inflate(1e-15);
        }
        let r = validate_diagram(&d);
        assert!(
            r.failures
                .iter()
                .any(|f| matches!(f, ValidationFailure::EquilateralTriple { index: 1, .. })),
            "{r:?}"
        );
    }

    #[test]
    fn isolated_ball_is_valid() {
        assert!(validate_diagram(&diagram(&[(0.0, 0.0, 1.0)])).is_valid());
    }
}

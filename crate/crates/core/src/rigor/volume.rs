use super::{lobachevsky, Interval, RigorError, RigorousComplex};

/// Shapes of an ideal triangulation together with a certified bound on the
/// distance between the approximate and the true solution of the gluing
/// equations.
#[derive(Clone, Debug, PartialEq)]
pub struct ShapeSolution {
    pub shapes: Vec<RigorousComplex>,
    pub delta: Interval,
}

impl ShapeSolution {
    pub fn new(shapes: Vec<RigorousComplex>, delta: Interval) -> Result<Self, RigorError> {
        if delta.lo() < 0.0 {
            return Err(RigorError::Domain {
                op: "shape error bound",
                operand: delta,
            });
        }
        Ok(ShapeSolution { shapes, delta })
    }

    pub fn exact(shapes: Vec<RigorousComplex>) -> Self {
        ShapeSolution {
            shapes,
            delta: Interval::ZERO,
        }
    }

    /// Whether every shape is certified positively oriented.
    pub fn is_positively_oriented(&self) -> bool {
        self.shapes.iter().all(|z| z.im.lo() > 0.0)
    }
}

/// The three dihedral angles `arg z`, `arg 1/(1-z)`, `arg (z-1)/z` of an
/// ideal tetrahedron, each tightened against `π` minus the other two.
pub fn dihedral_angles(z: &RigorousComplex) -> Result<[Interval; 3], RigorError> {
    if z.im.lo() <= 0.0 {
        return Err(RigorError::Degenerate {
            tetrahedron: None,
            shape: *z,
        });
    }
    let degenerate = |_| RigorError::Degenerate {
        tetrahedron: None,
        shape: *z,
    };
    let one = RigorousComplex::ONE;
    let z2 = (one - *z).recip().map_err(degenerate)?;
    let z3 = (*z - one).checked_div(z).map_err(degenerate)?;
    let a1 = z.arg().map_err(degenerate)?;
    let a2 = z2.arg().map_err(degenerate)?;
    let a3 = z3.arg().map_err(degenerate)?;
    let pi = Interval::pi();
    let sum = a1 + a2 + a3;
    if !sum.overlaps(&pi) {
        return Err(RigorError::Inconsistent(format!(
            "dihedral angles of {z} sum to {sum}, not pi"
        )));
    }
    let tighten = |a: Interval, b: Interval, c: Interval| -> Interval {
        a.intersect(&(pi - b - c)).unwrap_or(a)
    };
    Ok([
        tighten(a1, a2, a3),
        tighten(a2, a1, a3),
        tighten(a3, a1, a2),
    ])
}

/// Volume of the ideal tetrahedron with shape `z`:
/// `Л(arg z) + Л(arg 1/(1-z)) + Л(arg (z-1)/z)`.
pub fn ideal_tetra_volume(z: &RigorousComplex) -> Result<Interval, RigorError> {
    let angles = dihedral_angles(z)?;
    let mut vol = Interval::ZERO;
    for a in angles {
        vol = vol + lobachevsky(a)?;
    }
    Ok(vol)
}

/// Sum of tetrahedron volumes, each evaluated on its shape rectangle enlarged
/// by `delta.hi` in both coordinates.
pub fn triangulation_volume(sol: &ShapeSolution) -> Result<Interval, RigorError> {
    let grow = sol.delta.hi();
    let mut total = Interval::ZERO;
    for (index, z) in sol.shapes.iter().enumerate() {
        if z.im.lo() <= 0.0 {
            return Err(RigorError::Degenerate {
                tetrahedron: Some(index),
                shape: *z,
            });
        }
        let widened = z.inflate(grow);
        if widened.im.lo() <= 0.0 {
            return Err(RigorError::Uncertifiable {
                what: format!("orientation of tetrahedron {index} after widening by delta"),
                enclosure: widened.im,
            });
        }
        let v = ideal_tetra_volume(&widened).map_err(|e| match e {
            RigorError::Degenerate { shape, .. } => RigorError::Degenerate {
                tetrahedron: Some(index),
                shape,
            },
            other => other,
        })?;
        total = total + v;
    }
    Ok(total)
}

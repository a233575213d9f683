use crate::rigor::{Interval, RigorousComplex};

use super::{GeometryError, Horoball};

/// Translation group of `∂B_∞` fixing the base horoball.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CuspLattice {
    pub mu: RigorousComplex,
    pub lambda: RigorousComplex,
}

impl CuspLattice {
    /// Requires `Im(lambda / mu) > 0`, i.e. an oriented basis.
    pub fn new(mu: RigorousComplex, lambda: RigorousComplex) -> Result<Self, GeometryError> {
        let lattice = CuspLattice { mu, lambda };
        let area = lattice.signed_area();
        if area.lo() <= 0.0 {
            return Err(GeometryError::InvalidLattice(format!(
                "Im(conj(mu) lambda) = {area} is not certified positive"
            )));
        }
        Ok(lattice)
    }

    /// `Im(conj(mu) * lambda)`, the area of the fundamental parallelogram.
    pub fn signed_area(&self) -> Interval {
        (self.mu.conj() * self.lambda).im
    }

    pub fn area(&self) -> Interval {
        self.signed_area()
    }

    pub fn translation(&self, p: i64, q: i64) -> RigorousComplex {
        self.mu.scale(Interval::from_int(p)) + self.lambda.scale(Interval::from_int(q))
    }

    /// Real coordinates `(a, b)` with `z = a mu + b lambda`.
    pub fn coordinates(&self, z: &RigorousComplex) -> (Interval, Interval) {
        let area = self.signed_area();
        let a = (z.conj() * self.lambda)
            .im
            .checked_div(&area)
            .expect("area certified positive");
        let b = (self.mu.conj() * *z)
            .im
            .checked_div(&area)
            .expect("area certified positive");
        (a, b)
    }

    /// All `(p, q)` with `|w - (p mu + q lambda)| <= radius` could hold.
    ///
    /// Writing `w - t = (a - p) mu + (b - q) lambda`, the distance from `w - t`
    /// to the line through `mu` is `|b - q| A / |mu|` and to the line through
    /// `lambda` is `|a - p| A / |lambda|`, where `A` is the parallelogram
    /// area. Both are at most `|w - t|`, so
    /// `|p - a| <= radius |lambda| / A` and `|q - b| <= radius |mu| / A`.
    pub fn translates_near(&self, w: &RigorousComplex, radius: f64) -> Vec<(i64, i64)> {
        let (a, b) = self.coordinates(w);
        let area = self.signed_area();
        let r = Interval::point(radius);
        let sp = (r * self.lambda.abs())
            .checked_div(&area)
            .expect("area")
            .hi();
        let sq = (r * self.mu.abs()).checked_div(&area).expect("area").hi();
        let p0 = (a.lo() - sp).floor() as i64;
        let p1 = (a.hi() + sp).ceil() as i64;
        let q0 = (b.lo() - sq).floor() as i64;
        let q1 = (b.hi() + sq).ceil() as i64;
        let mut out = Vec::new();
        for p in p0..=p1 {
            for q in q0..=q1 {
                out.push((p, q));
            }
        }
        out
    }

    /// The integer pair whose translation encloses `z`, if the enclosure of
    /// each coordinate contains exactly one integer.
    pub fn as_translation(&self, z: &RigorousComplex) -> Option<(i64, i64)> {
        let (a, b) = self.coordinates(z);
        Some((unique_integer(&a)?, unique_integer(&b)?))
    }
}

fn unique_integer(x: &Interval) -> Option<i64> {
    let lo = x.lo().ceil();
    let hi = x.hi().floor();
    (lo == hi).then_some(lo as i64)
}

/// A finite horoball of a cusp diagram, representing its orbit under the
/// lattice. The optional label declares the orthopair class of the pair
/// formed with `B_∞`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiagramBall {
    pub center: RigorousComplex,
    pub diameter: Interval,
    pub label: Option<usize>,
}

impl DiagramBall {
    pub fn horoball(&self) -> Horoball {
        Horoball::Finite {
            center: self.center,
            diameter: self.diameter,
        }
    }
}

/// Declared orientation-preserving symmetry `z -> u z + b` of a diagram.
///
/// Declaring a symmetry is how an exporter certifies that pairs related by it
/// belong to the same orthopair class.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Symmetry {
    pub u: RigorousComplex,
    pub b: RigorousComplex,
}

impl Symmetry {
    pub fn apply(&self, z: &RigorousComplex) -> RigorousComplex {
        self.u * *z + self.b
    }
}

/// How a verified symmetry acts on the diagram's combinatorics.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct SymmetryAction {
    /// Integer matrix of `t -> u t` in the lattice basis: `u mu = m[0][0] mu + m[0][1] lambda`.
    pub lattice_map: [[i64; 2]; 2],
    /// Ball `i` maps to ball `ball_map[i].0` translated by `ball_map[i].1`.
    pub ball_map: Vec<(usize, (i64, i64))>,
}

impl SymmetryAction {
    pub fn map_translation(&self, (p, q): (i64, i64)) -> (i64, i64) {
        let m = &self.lattice_map;
        (p * m[0][0] + q * m[1][0], p * m[0][1] + q * m[1][1])
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CuspDiagram {
    pub lattice: CuspLattice,
    pub balls: Vec<DiagramBall>,
    pub symmetries: Vec<Symmetry>,
}

impl CuspDiagram {
    pub fn new(lattice: CuspLattice, balls: Vec<DiagramBall>) -> Self {
        CuspDiagram {
            lattice,
            balls,
            symmetries: Vec::new(),
        }
    }

    pub fn with_symmetries(mut self, symmetries: Vec<Symmetry>) -> Self {
        self.symmetries = symmetries;
        self
    }

    pub fn is_fully_labeled(&self) -> bool {
        !self.balls.is_empty() && self.balls.iter().all(|b| b.label.is_some())
    }

    /// Translate every ball center by `p mu + q lambda`.
    pub fn translated(&self, p: i64, q: i64) -> CuspDiagram {
        let t = self.lattice.translation(p, q);
        let mut out = self.clone();
        for b in &mut out.balls {
            b.center = b.center + t;
        }
        out
    }

    pub(crate) fn symmetry_action(&self, index: usize) -> Result<SymmetryAction, GeometryError> {
        let sym = &self.symmetries[index];
        let bad = |reason: String| GeometryError::InvalidSymmetry { index, reason };
        if !sym.u.norm_sqr().contains(1.0) {
            return Err(bad(format!("|u|^2 = {} is not 1", sym.u.norm_sqr())));
        }
        let um = sym.u * self.lattice.mu;
        let ul = sym.u * self.lattice.lambda;
        let (m00, m01) = self
            .lattice
            .as_translation(&um)
            .ok_or_else(|| bad("u mu is not a lattice vector".into()))?;
        let (m10, m11) = self
            .lattice
            .as_translation(&ul)
            .ok_or_else(|| bad("u lambda is not a lattice vector".into()))?;
        if m00 * m11 - m01 * m10 != 1 {
            return Err(bad("u does not preserve the lattice orientation".into()));
        }
        let mut ball_map = Vec::with_capacity(self.balls.len());
        for (i, ball) in self.balls.iter().enumerate() {
            let image = sym.apply(&ball.center);
            let mut found = None;
            for (j, other) in self.balls.iter().enumerate() {
                if !other.diameter.overlaps(&ball.diameter) {
                    continue;
                }
                if let Some(t) = self.lattice.as_translation(&(image - other.center)) {
                    let back = other.center + self.lattice.translation(t.0, t.1);
                    if back.overlaps(&image) {
                        if found.is_some() {
                            return Err(bad(format!("image of ball {i} matches several balls")));
                        }
                        found = Some((j, t));
                    }
                }
            }
            let target =
                found.ok_or_else(|| bad(format!("image of ball {i} is not a diagram ball")))?;
            ball_map.push(target);
        }
        Ok(SymmetryAction {
            lattice_map: [[m00, m01], [m10, m11]],
            ball_map,
        })
    }
}

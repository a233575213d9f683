use std::collections::BTreeMap;

use crate::rigor::Interval;

use super::{CuspDiagram, GeometryError, PairWitness, Spectrum};

/// The triple `(B_∞, ball i, ball j + p mu + q lambda)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TripleWitness {
    pub i: usize,
    pub j: usize,
    pub p: i64,
    pub q: i64,
}

/// All triples of one type `(k, l, m)`, `k ≤ l ≤ m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleClass {
    pub kind: [usize; 3],
    pub witnesses: Vec<TripleWitness>,
    /// Number of distinct triple classes of this type.
    pub multiplicity: usize,
}

impl TripleClass {
    pub fn new(kind: [usize; 3], multiplicity: usize) -> Self {
        let mut kind = kind;
        kind.sort_unstable();
        TripleClass {
            kind,
            witnesses: Vec::new(),
            multiplicity,
        }
    }

    /// Largest index occurring exactly once in the type, if any.
    pub fn unique_index(&self) -> Option<usize> {
        unique_index(&self.kind)
    }
}

fn unique_index(kind: &[usize; 3]) -> Option<usize> {
    kind.iter()
        .copied()
        .filter(|x| kind.iter().filter(|y| *y == x).count() == 1)
        .max()
}

/// Enumerates the triple classes all of whose pairs lie in the spectrum.
///
/// Every triple can be moved so that `B_∞` is one of its members; the other two
/// balls then form a finite pair of the spectrum. Each such view is recorded
/// as a witness. A triple class is seen once with `B_∞` opposite each of its
/// three pairs, so when the type has an index `n` occurring exactly once the
/// classes are counted by the views whose finite pair lies in class `n`. For
/// types `(m, m, m)` every view qualifies and the count is rounded up from a
/// third of the views.
pub fn enumerate_triples(
    d: &CuspDiagram,
    spectrum: &Spectrum,
) -> Result<Vec<TripleClass>, GeometryError> {
    let mut views: BTreeMap<[usize; 3], Vec<(TripleWitness, usize)>> = BTreeMap::new();
    for class in &spectrum.classes {
        for w in &class.witnesses {
            let PairWitness::Pair { i, j, p, q } = *w else {
                continue;
            };
            if i >= d.balls.len() || j >= d.balls.len() {
                return Err(GeometryError::Precondition(format!(
                    "spectrum witness {w:?} does not belong to this diagram"
                )));
            }
            let a = spectrum.class_of(&PairWitness::Base { ball: i });
            let b = spectrum.class_of(&PairWitness::Base { ball: j });
            let (Some(a), Some(b)) = (a, b) else {
                continue;
            };
            let mut kind = [a, b, class.index];
            kind.sort_unstable();
            views
                .entry(kind)
                .or_default()
                .push((TripleWitness { i, j, p, q }, class.index));
        }
    }
    let mut out = Vec::with_capacity(views.len());
    for (kind, mut list) in views {
        list.sort();
        let multiplicity = match unique_index(&kind) {
            Some(n) => list.iter().filter(|(_, c)| *c == n).count(),
            None => list.len().div_ceil(3),
        };
        out.push(TripleClass {
            kind,
            witnesses: list.into_iter().map(|(w, _)| w).collect(),
            multiplicity,
        });
    }
    Ok(out)
}

/// Planar distance between the shadow centers of the two balls forming the
/// class-`n` pair of a triple of type `kind` with `B_∞` as third member:
/// `e_n / (e_k e_m)` where `k`, `m` are the other two indices.
pub fn center_distance_of_triple(
    kind: [usize; 3],
    n: usize,
    spectrum: &Spectrum,
) -> Result<Interval, GeometryError> {
    let pos = kind.iter().position(|&x| x == n).ok_or_else(|| {
        GeometryError::Precondition(format!("index {n} does not occur in type {kind:?}"))
    })?;
    let others: Vec<usize> = (0..3).filter(|&t| t != pos).map(|t| kind[t]).collect();
    let denom = spectrum.e(others[0])? * spectrum.e(others[1])?;
    Ok(spectrum.e(n)?.checked_div(&denom)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{ortho_spectrum, CuspLattice, DiagramBall};
    use crate::rigor::RigorousComplex;

    fn two_full_balls(gap: f64) -> CuspDiagram {
        let lattice = CuspLattice::new(
            RigorousComplex::point(10.0, 0.0),
            RigorousComplex::point(0.0, 10.0),
        )
        .unwrap();
        let ball = |x: f64| DiagramBall {
            center: RigorousComplex::point(x, 0.0),
            diameter: Interval::ONE,
            label: Some(1),
        };
        CuspDiagram::new(lattice, vec![ball(0.0), ball(gap)])
    }

    #[test]
    fn smallest_triple() {
        let d = two_full_balls(1.2);
        let s = ortho_spectrum(&d, Interval::ONE).unwrap();
        assert_eq!(s.len(), 2);
        let t = enumerate_triples(&d, &s).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].kind, [1, 1, 2]);
        assert_eq!(t[0].multiplicity, 1);
        let dist = center_distance_of_triple([1, 1, 2], 2, &s).unwrap();
        assert!(dist.contains(1.2) || dist.overlaps(&Interval::point(1.2)));
    }

    #[test]
    fn formula_on_hypothetical_spectrum() {
        let s =
            Spectrum::from_orthos(&[Interval::ZERO, Interval::point(0.2), Interval::point(0.5)])
                .unwrap();
        let d = center_distance_of_triple([1, 2, 3], 3, &s).unwrap();
        assert!(d.overlaps(&Interval::point(0.15).exp()));
        assert!(d.width() < 1e-14);
        let one = center_distance_of_triple([1, 1, 1], 1, &s).unwrap();
        assert!(one.contains(1.0));
        assert!(center_distance_of_triple([1, 1, 2], 3, &s).is_err());
    }

    #[test]
    fn unique_index_rule() {
        assert_eq!(unique_index(&[1, 1, 2]), Some(2));
        assert_eq!(unique_index(&[1, 2, 3]), Some(3));
        assert_eq!(unique_index(&[2, 3, 3]), Some(2));
        assert_eq!(unique_index(&[4, 4, 4]), None);
    }
}

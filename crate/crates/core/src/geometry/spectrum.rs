use std::collections::{BTreeMap, HashMap};

use crate::rigor::Interval;
use crate::util::UnionFind;

use super::{ortho_from_offset, CuspDiagram, GeometryError};

/// A horoball pair, up to the lattice action.
///
/// `Base { ball }` is the pair `(B_∞, ball)`. `Pair { i, j, p, q }` is ball `i`
/// together with ball `j` translated by `p mu + q lambda`; it is stored in the
/// smaller of the two equivalent forms `(i, j, p, q)` and `(j, i, -p, -q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PairWitness {
    Base { ball: usize },
    Pair { i: usize, j: usize, p: i64, q: i64 },
}

impl PairWitness {
    pub fn pair(i: usize, j: usize, p: i64, q: i64) -> Self {
        let a = (i, j, p, q);
        let b = (j, i, -p, -q);
        let (i, j, p, q) = a.min(b);
        PairWitness::Pair { i, j, p, q }
    }

    fn canonical(self) -> Self {
        match self {
            PairWitness::Pair { i, j, p, q } => PairWitness::pair(i, j, p, q),
            base => base,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OrthopairClass {
    pub index: usize,
    pub ortho: Interval,
    pub e: Interval,
    pub witnesses: Vec<PairWitness>,
}

/// The orthodistance spectrum `o(1) ≤ o(2) ≤ ...` of a diagram up to a cutoff.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    pub cutoff: Interval,
    pub classes: Vec<OrthopairClass>,
    lookup: HashMap<PairWitness, usize>,
}

impl Spectrum {
    /// A spectrum with the given orthodistances and no witnesses, for
    /// evaluating formulas on hypothetical data.
    pub fn from_orthos(orthos: &[Interval]) -> Result<Self, GeometryError> {
        let mut classes = Vec::with_capacity(orthos.len());
        for (k, o) in orthos.iter().enumerate() {
            if k > 0 && orthos[k - 1].lo() > o.hi() {
                return Err(GeometryError::Precondition(format!(
                    "orthodistances out of order at index {}",
                    k + 1
                )));
            }
            classes.push(OrthopairClass {
                index: k + 1,
                ortho: *o,
                e: o.scale(0.5).exp(),
                witnesses: Vec::new(),
            });
        }
        let cutoff = orthos.last().copied().unwrap_or(Interval::ZERO);
        Ok(Spectrum {
            cutoff,
            classes,
            lookup: HashMap::new(),
        })
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Class with 1-based index `n`.
    pub fn get(&self, n: usize) -> Option<&OrthopairClass> {
        n.checked_sub(1).and_then(|k| self.classes.get(k))
    }

    pub fn e(&self, n: usize) -> Result<Interval, GeometryError> {
        self.get(n).map(|c| c.e).ok_or_else(|| {
            GeometryError::Precondition(format!(
                "orthopair index {n} outside the computed spectrum (length {})",
                self.len()
            ))
        })
    }

    pub fn class_of(&self, w: &PairWitness) -> Option<usize> {
        self.lookup.get(&w.canonical()).copied()
    }
}

/// All lattice-inequivalent pairs of finite balls whose orthodistance could be
/// at most `cutoff.hi`, with their enclosures.
///
/// A pair at offset `Δ` has orthodistance `log(|Δ|² / (d_i d_j))`, which is at
/// most `c` exactly when `|Δ| ≤ sqrt(d_i d_j) e^{c/2}`; translates are taken
/// from [`CuspLattice::translates_near`](super::CuspLattice::translates_near)
/// with that radius.
pub fn finite_pairs(
    d: &CuspDiagram,
    cutoff: Interval,
) -> Result<Vec<(PairWitness, Interval)>, GeometryError> {
    let mut out = Vec::new();
    let growth = cutoff.scale(0.5).exp();
    for (i, a) in d.balls.iter().enumerate() {
        for (j, b) in d.balls.iter().enumerate().skip(i) {
            let radius = ((a.diameter * b.diameter).sqrt()? * growth).hi();
            let w = a.center - b.center;
            for (p, q) in d.lattice.translates_near(&w, radius) {
                let witness = PairWitness::pair(i, j, p, q);
                if witness != (PairWitness::Pair { i, j, p, q }) {
                    continue;
                }
                if i == j && p == 0 && q == 0 {
                    continue;
                }
                let offset = w - d.lattice.translation(p, q);
                let o = ortho_from_offset(&offset, a.diameter, b.diameter)?
                    .ok_or(GeometryError::DegeneratePair { i, j, p, q })?;
                if o.lo() <= cutoff.hi() {
                    out.push((witness, o));
                }
            }
        }
    }
    out.sort_by_key(|x| x.0);
    Ok(out)
}

/// Groups every pair with orthodistance at most `cutoff` into orthopair
/// classes.
///
/// Two pairs are put in the same class only when that is certified:
/// base pairs of balls carrying the same label, pairs exchanged by a declared
/// diagram symmetry, or, when every ball is labeled, a finite pair whose
/// enclosure meets exactly one labeled class. A fully labeled diagram asserts
/// that every class below the cutoff is represented by a ball, which holds for
/// complete diagrams of one-cusped manifolds. Any remaining overlap between
/// distinct classes is reported as ambiguous.
pub fn ortho_spectrum(d: &CuspDiagram, cutoff: Interval) -> Result<Spectrum, GeometryError> {
    if cutoff.lo() < 0.0 {
        return Err(GeometryError::Precondition(format!(
            "cutoff {cutoff} must be non-negative"
        )));
    }
    let mut witnesses: Vec<(PairWitness, Interval)> = Vec::new();
    for (ball, b) in d.balls.iter().enumerate() {
        if b.diameter.lo() <= 0.0 {
            return Err(GeometryError::Precondition(format!(
                "ball {ball} has non-positive diameter {}",
                b.diameter
            )));
        }
        let o = -b.diameter.ln()?;
        if o.lo() <= cutoff.hi() {
            witnesses.push((PairWitness::Base { ball }, o));
        }
    }
    witnesses.extend(finite_pairs(d, cutoff)?);
    let position: HashMap<PairWitness, usize> = witnesses
        .iter()
        .enumerate()
        .map(|(k, (w, _))| (*w, k))
        .collect();
    let mut uf = UnionFind::new(witnesses.len());

    let mut by_label: BTreeMap<usize, usize> = BTreeMap::new();
    for (k, (w, _)) in witnesses.iter().enumerate() {
        if let PairWitness::Base { ball } = w {
            if let Some(label) = d.balls[*ball].label {
                match by_label.get(&label) {
                    Some(&first) => {
                        uf.union(first, k);
                    }
                    None => {
                        by_label.insert(label, k);
                    }
                }
            }
        }
    }

    for s in 0..d.symmetries.len() {
        let action = d.symmetry_action(s)?;
        for (k, (w, o)) in witnesses.iter().enumerate() {
            let image = match *w {
                PairWitness::Base { ball } => PairWitness::Base {
                    ball: action.ball_map[ball].0,
                },
                PairWitness::Pair { i, j, p, q } => {
                    let (i2, ti) = action.ball_map[i];
                    let (j2, tj) = action.ball_map[j];
                    let (mp, mq) = action.map_translation((p, q));
                    PairWitness::pair(i2, j2, tj.0 + mp - ti.0, tj.1 + mq - ti.1)
                }
            };
            if let Some(&m) = position.get(&image) {
                if !witnesses[m].1.overlaps(o) {
                    return Err(GeometryError::Inconsistent(format!(
                        "symmetry #{s} maps {w:?} (o = {o}) to {image:?} (o = {})",
                        witnesses[m].1
                    )));
                }
                uf.union(k, m);
            }
        }
    }

    if d.is_fully_labeled() {
        let (ids, count) = uf.labels();
        let groups = collect_groups(&witnesses, &ids, count)?;
        for g in &groups {
            if g.has_base {
                continue;
            }
            let hits: Vec<&Group> = groups
                .iter()
                .filter(|h| h.has_base && h.ortho.overlaps(&g.ortho))
                .collect();
            match hits.as_slice() {
                [] => {}
                [h] => {
                    uf.union(g.members[0], h.members[0]);
                }
                _ => {
                    return Err(GeometryError::AmbiguousSpectrum(format!(
                        "pair {:?} (o = {}) overlaps several labeled classes",
                        witnesses[g.members[0]].0, g.ortho
                    )))
                }
            }
        }
    }

    let (ids, count) = uf.labels();
    let mut groups = collect_groups(&witnesses, &ids, count)?;
    for (a, g) in groups.iter().enumerate() {
        for h in &groups[a + 1..] {
            if g.ortho.overlaps(&h.ortho) {
                return Err(GeometryError::AmbiguousSpectrum(format!(
                    "classes of {:?} (o = {}) and {:?} (o = {}) overlap but are not certified equal",
                    witnesses[g.members[0]].0,
                    g.ortho,
                    witnesses[h.members[0]].0,
                    h.ortho
                )));
            }
        }
    }
    groups.sort_by(|a, b| a.ortho.lo().total_cmp(&b.ortho.lo()));

    let mut classes = Vec::with_capacity(groups.len());
    let mut lookup = HashMap::new();
    for (k, g) in groups.into_iter().enumerate() {
        let index = k + 1;
        let mut members: Vec<PairWitness> = g.members.iter().map(|&m| witnesses[m].0).collect();
        members.sort();
        for w in &members {
            if let PairWitness::Base { ball } = w {
                if let Some(label) = d.balls[*ball].label {
                    if label != index {
                        return Err(GeometryError::Inconsistent(format!(
                            "ball {ball} is labeled {label} but its class has index {index}"
                        )));
                    }
                }
            }
            lookup.insert(*w, index);
        }
        classes.push(OrthopairClass {
            index,
            ortho: g.ortho,
            e: g.ortho.scale(0.5).exp(),
            witnesses: members,
        });
    }
    Ok(Spectrum {
        cutoff,
        classes,
        lookup,
    })
}

struct Group {
    members: Vec<usize>,
    ortho: Interval,
    has_base: bool,
}

fn collect_groups(
    witnesses: &[(PairWitness, Interval)],
    ids: &[usize],
    count: usize,
) -> Result<Vec<Group>, GeometryError> {
    let mut groups: Vec<Option<Group>> = (0..count).map(|_| None).collect();
    for (k, (w, o)) in witnesses.iter().enumerate() {
        let base = matches!(w, PairWitness::Base { .. });
        match &mut groups[ids[k]] {
            slot @ None => {
                *slot = Some(Group {
                    members: vec![k],
                    ortho: *o,
                    has_base: base,
                })
            }
            Some(g) => {
                g.ortho = g.ortho.intersect(o).ok_or_else(|| {
                    GeometryError::Inconsistent(format!(
                        "{w:?} (o = {o}) is certified equal to pairs with o = {}",
                        g.ortho
                    ))
                })?;
                g.members.push(k);
                g.has_base |= base;
            }
        }
    }
    Ok(groups.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{CuspLattice, DiagramBall, Symmetry};
    use crate::rigor::RigorousComplex;

    fn square_diagram(symmetric: bool) -> CuspDiagram {
        let lattice = CuspLattice::new(
            RigorousComplex::point(2.0, 0.0),
            RigorousComplex::point(0.0, 2.0),
        )
        .unwrap();
        let ball = DiagramBall {
            center: RigorousComplex::ZERO,
            diameter: Interval::ONE,
            label: None,
        };
        let d = CuspDiagram::new(lattice, vec![ball]);
        if symmetric {
            d.with_symmetries(vec![Symmetry {
                u: RigorousComplex::point(0.0, 1.0),
                b: RigorousComplex::ZERO,
            }])
        } else {
            d
        }
    }

    #[test]
    fn canonical_pairs() {
        assert_eq!(
            PairWitness::pair(2, 1, 1, -1),
            PairWitness::pair(1, 2, -1, 1)
        );
        assert_eq!(
            PairWitness::pair(0, 0, 1, 0),
            PairWitness::Pair {
                i: 0,
                j: 0,
                p: -1,
                q: 0
            }
        );
    }

    #[test]
    fn square_lattice_starts_at_zero() {
        let s = ortho_spectrum(&square_diagram(false), Interval::ONE).unwrap();
        assert_eq!(s.len(), 1);
        assert!(s.classes[0].ortho.contains(0.0));
    }

    #[test]
    fn unproven_ties_are_ambiguous() {
        let r = ortho_spectrum(&square_diagram(false), Interval::point(1.5));
        assert!(
            matches!(r, Err(GeometryError::AmbiguousSpectrum(_))),
            "{r:?}"
        );
    }

    #[test]
    fn declared_rotation_merges_translates() {
        let s = ortho_spectrum(&square_diagram(true), Interval::point(1.5)).unwrap();
        assert_eq!(s.len(), 2);
        let two_log_two = Interval::point(2.0).ln().unwrap().scale(2.0);
        assert!(s.classes[1].ortho.overlaps(&two_log_two));
        assert_eq!(s.classes[1].witnesses.len(), 2);
        assert_eq!(s.class_of(&PairWitness::pair(0, 0, 0, 1)), Some(2));
        assert_eq!(s.class_of(&PairWitness::pair(0, 0, 1, 0)), Some(2));
    }

    #[test]
    fn cutoff_must_be_non_negative() {
        assert!(ortho_spectrum(&square_diagram(false), Interval::point(-1.0)).is_err());
    }

    #[test]
    fn hypothetical_spectrum() {
        let s = Spectrum::from_orthos(&[Interval::ZERO, Interval::point(0.2)]).unwrap();
        assert!(s.e(2).unwrap().contains(0.1f64.exp()) || s.e(2).unwrap().width() < 1e-15);
        assert!(s.e(3).is_err());
        assert!(Spectrum::from_orthos(&[Interval::ONE, Interval::ZERO]).is_err());
    }
}

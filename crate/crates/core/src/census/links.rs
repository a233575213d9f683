//! Edge classes, vertex links and first homology of a gluing.

use std::fmt;

use crate::util::UnionFind;

use super::complex::Complex;
use super::homology::smith_normal_form;
use super::{CensusError, GluingDescription};

/// Union-find over edges remembering whether two edges are identified with
/// their canonical directions agreeing (parity 0) or reversed (parity 1).
/// No path compression, so unions can be undone in LIFO order.
#[derive(Clone, Debug)]
pub(crate) struct EdgeClasses {
    parent: Vec<usize>,
    parity: Vec<u8>,
    size: Vec<usize>,
    classes: usize,
    history: Vec<Option<(usize, usize)>>,
}

impl EdgeClasses {
    pub fn new(n: usize) -> Self {
        EdgeClasses {
            parent: (0..n).collect(),
            parity: vec![0; n],
            size: vec![1; n],
            classes: n,
            history: Vec::new(),
        }
    }

    pub fn classes(&self) -> usize {
        self.classes
    }

    pub fn find(&self, mut x: usize) -> (usize, u8) {
        let mut p = 0;
        while self.parent[x] != x {
            p ^= self.parity[x];
            x = self.parent[x];
        }
        (x, p)
    }

    /// Identifies `a` and `b` with relative parity `rel`. Returns false if
    /// they already lie in one class with the opposite parity, i.e. the edge
    /// would be glued to itself reversed. Always pushes one history entry.
    pub fn union(&mut self, a: usize, b: usize, rel: u8) -> bool {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            self.history.push(None);
            return pa ^ pb == rel;
        }
        let (big, small) = if self.size[ra] >= self.size[rb] {
            (ra, rb)
        } else {
            (rb, ra)
        };
        self.parent[small] = big;
        self.parity[small] = pa ^ pb ^ rel;
        self.size[big] += self.size[small];
        self.classes -= 1;
        self.history.push(Some((small, big)));
        true
    }

    pub fn undo(&mut self) {
        if let Some((small, big)) = self.history.pop().expect("undo without union") {
            self.parent[small] = small;
            self.parity[small] = 0;
            self.size[big] -= self.size[small];
            self.classes += 1;
        }
    }
}

/// Glues the three edge pairs of faces `f` and `g` (pole to pole). Returns
/// false if some edge becomes identified with itself reversed; the three
/// history entries are pushed either way.
pub(crate) fn glue_edges(c: &Complex, edges: &mut EdgeClasses, f: usize, g: usize) -> bool {
    let mut ok = true;
    for k in 0..3 {
        let j = (5 - k) % 3;
        let (ef, ff) = c.face_edges[f][k];
        let (eg, fg) = c.face_edges[g][j];
        ok &= edges.union(ef, eg, u8::from(ff == fg));
    }
    ok
}

/// Number of edge classes an admissible gluing must have: the truncated
/// manifold has Euler characteristic `cells - face pairs + edge classes = 0`.
pub(crate) fn target_edge_classes(c: &Complex) -> usize {
    c.n_faces / 2 - c.n_cells()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VertexClass {
    Polar,
    Equatorial,
    /// Contains both kinds of corner; impossible for pole-preserving gluings.
    Mixed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexLink {
    pub euler: i64,
    pub orientable: bool,
    pub class: VertexClass,
    pub corners: usize,
}

impl VertexLink {
    pub fn is_torus(&self) -> bool {
        self.euler == 0 && self.orientable
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexLinkReport {
    pub links: Vec<VertexLink>,
    pub edge_classes: usize,
    /// Edge classes identified with themselves reversed.
    pub singular_edges: usize,
}

impl VertexLinkReport {
    pub fn all_tori(&self) -> bool {
        self.links.iter().all(VertexLink::is_torus)
    }

    pub fn polar_classes(&self) -> usize {
        self.links
            .iter()
            .filter(|l| l.class == VertexClass::Polar)
            .count()
    }

    /// Whether no class mixes polar and equatorial corners.
    pub fn polar_closed(&self) -> bool {
        self.links.iter().all(|l| l.class != VertexClass::Mixed)
    }

    /// Torus links only, no singular edge, and the polar vertices forming
    /// a single class.
    pub fn is_admissible(&self) -> bool {
        self.singular_edges == 0
            && self.all_tori()
            && self.polar_closed()
            && self.polar_classes() == 1
    }

    pub fn euler_sum(&self) -> i64 {
        self.links.iter().map(|l| l.euler).sum()
    }
}

/// Traces vertex classes and assembles each link from the corner polygons.
pub fn vertex_links(g: &GluingDescription) -> Result<VertexLinkReport, CensusError> {
    g.check()?;
    let c = g.inventory.complex();
    Ok(links_of(&c, &g.partner, &g.rotation))
}

pub(crate) fn links_of(c: &Complex, partner: &[usize], rotation: &[u8]) -> VertexLinkReport {
    let mut edges = EdgeClasses::new(c.n_edges);
    let mut singular_roots = Vec::new();
    let mut corners = UnionFind::new(c.n_corners);
    // corner parity for link orientability
    let mut orient = EdgeClasses::new(c.n_corners);
    let mut link_orientable = true;
    for f in 0..c.n_faces {
        let g = partner[f];
        if g < f {
            continue;
        }
        let r = rotation[f] as usize;
        for k in 0..3 {
            let img = (r + 3 - k) % 3;
            corners.union(c.face_corners[f][k], c.face_corners[g][img]);
            // k -> r - k is a reflection of the triangle, so the induced
            // orientations of the corner polygons agree across the face
            link_orientable &= orient.union(c.face_corners[f][k], c.face_corners[g][img], 0);
            let j = (r + 5 - k) % 3;
            let (ef, ff) = c.face_edges[f][k];
            let (eg, fg) = c.face_edges[g][j];
            if !edges.union(ef, eg, u8::from(ff == fg)) {
                singular_roots.push(edges.find(ef).0);
            }
        }
    }
    singular_roots.sort_unstable();
    singular_roots.dedup();

    let (label, n_classes) = corners.labels();
    let mut links = vec![
        VertexLink {
            euler: 0,
            orientable: link_orientable,
            class: VertexClass::Equatorial,
            corners: 0,
        };
        n_classes
    ];
    let mut degree_sum = vec![0i64; n_classes];
    let mut polar = vec![0usize; n_classes];
    for (corner, &l) in label.iter().enumerate() {
        links[l].corners += 1;
        polar[l] += usize::from(c.corner_polar[corner]);
        degree_sum[l] += c.corner_degree[corner] as i64;
    }
    for (l, link) in links.iter_mut().enumerate() {
        link.class = match polar[l] {
            0 => VertexClass::Equatorial,
            p if p == link.corners => VertexClass::Polar,
            _ => VertexClass::Mixed,
        };
    }
    let mut ends = vec![0i64; n_classes];
    for e in 0..c.n_edges {
        if edges.find(e).0 == e {
            for &corner in &c.edge_ends[e] {
                ends[label[corner]] += 1;
            }
        }
    }
    for (l, link) in links.iter_mut().enumerate() {
        link.euler = ends[l] - degree_sum[l] / 2 + link.corners as i64;
    }
    VertexLinkReport {
        links,
        edge_classes: edges.classes(),
        singular_edges: singular_roots.len(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomologyInvariants {
    pub rank: usize,
    /// Invariant factors ≥ 2, each dividing the next.
    pub torsion: Vec<i64>,
}

impl fmt::Display for HomologyInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t: Vec<String> = self.torsion.iter().map(|x| x.to_string()).collect();
        write!(f, "{}+[{}]", self.rank, t.join(","))
    }
}

/// Boundary matrices `(d1, d2)` of the dual spine.
pub type Boundaries = (Vec<Vec<i64>>, Vec<Vec<i64>>);

/// Cellular chain complex of the dual spine: 0-cells are the polyhedra,
/// 1-cells the face pairs (oriented from the lower-numbered face's cell to
/// its partner's), 2-cells the edge classes. Returns `(d1, d2)` as
/// `cells × pairs` and `pairs × edge classes` matrices.
pub(crate) fn dual_boundaries(c: &Complex, partner: &[usize]) -> Result<Boundaries, CensusError> {
    if partner.iter().any(|&p| p >= c.n_faces) {
        return Err(CensusError::Structural("partner out of range".into()));
    }
    let pairs: Vec<usize> = (0..c.n_faces).filter(|&f| partner[f] > f).collect();
    let mut pair_of = vec![usize::MAX; c.n_faces];
    for (k, &f) in pairs.iter().enumerate() {
        pair_of[f] = k;
        pair_of[partner[f]] = k;
    }
    let mut d1 = vec![vec![0i64; pairs.len()]; c.n_cells()];
    for (k, &f) in pairs.iter().enumerate() {
        d1[c.face_cell[partner[f]]][k] += 1;
        d1[c.face_cell[f]][k] -= 1;
    }

    // walk around each edge class; state = (edge, direction)
    let mut seen = vec![false; c.n_edges];
    let mut columns = Vec::new();
    for start in 0..c.n_edges {
        if seen[start] {
            continue;
        }
        let mut column = vec![0i64; pairs.len()];
        let (mut e, mut forward) = (start, true);
        let mut steps = 0;
        loop {
            seen[e] = true;
            let (face, k) = c.edge_faces[e][usize::from(!forward)];
            let g = partner[face];
            column[pair_of[face]] += if face < g { 1 } else { -1 };
            let j = (5 - k) % 3;
            let (next, fwd) = c.face_edges[g][j];
            e = next;
            forward = !fwd;
            steps += 1;
            if e == start {
                if !forward {
                    return Err(CensusError::Structural(format!(
                        "edge {start} is identified with itself reversed"
                    )));
                }
                break;
            }
            if steps > 2 * c.n_edges {
                return Err(CensusError::Structural(format!(
                    "orbit of edge {start} does not close"
                )));
            }
        }
        columns.push(column);
    }
    let d2 = (0..pairs.len())
        .map(|k| columns.iter().map(|col| col[k]).collect())
        .collect();
    Ok((d1, d2))
}

/// Boundary maps `(d1, d2)` of the dual spine of a pole-preserving gluing.
/// `d1` is indexed by polyhedra × face pairs (pairs ordered by their lower
/// face), `d2` by face pairs × edge classes.
pub fn chain_complex(g: &GluingDescription) -> Result<Boundaries, CensusError> {
    g.check()?;
    if !g.is_polar() {
        return Err(CensusError::Unsupported(
            "chain complex of non-polar identifications".into(),
        ));
    }
    dual_boundaries(&g.inventory.complex(), &g.partner)
}

/// Rank of an integer matrix via its invariant factors.
fn rank(m: &[Vec<i64>]) -> Result<usize, CensusError> {
    Ok(smith_normal_form(m)?.len())
}

/// First homology of the truncated manifold, computed on the dual spine.
pub fn homology(g: &GluingDescription) -> Result<HomologyInvariants, CensusError> {
    let (d1, d2) = chain_complex(g)?;
    let pairs = g.partner.len() / 2;
    let factors = smith_normal_form(&d2)?;
    let r1 = rank(&d1)?;
    let rank = pairs - r1 - factors.len();
    let torsion = factors.into_iter().filter(|&x| x > 1).collect();
    Ok(HomologyInvariants { rank, torsion })
}

//! Independent census oracles: unpruned matching enumeration, admissibility
//! from scratch, canonical labeling by traversal and determinantal divisors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Vertex lists (pole first) of the faces of a disjoint union of
/// dipyramids; local vertex `v` is north, `v + 1` south.
pub struct Cells {
    pub sides: Vec<usize>,
    /// (cell, vertex triple) for each face.
    pub faces: Vec<(usize, [usize; 3])>,
    pub first_face: Vec<usize>,
}

impl Cells {
    pub fn new(sides: &[usize]) -> Self {
        let mut faces = Vec::new();
        let mut first_face = Vec::new();
        for (cell, &v) in sides.iter().enumerate() {
            first_face.push(faces.len());
            for i in 0..v {
                faces.push((cell, [v, i, (i + 1) % v]));
            }
            for i in 0..v {
                faces.push((cell, [v + 1, (i + 1) % v, i]));
            }
        }
        Cells {
            sides: sides.to_vec(),
            faces,
            first_face,
        }
    }

    pub fn n_faces(&self) -> usize {
        self.faces.len()
    }

    fn vertex_id(&self, cell: usize, local: usize) -> usize {
        self.sides[..cell].iter().map(|v| v + 2).sum::<usize>() + local
    }

    fn n_vertices(&self) -> usize {
        self.sides.iter().map(|v| v + 2).sum()
    }

    /// Orientation-preserving, pole-pair-preserving vertex maps of cell `c`.
    fn vertex_maps(&self, c: usize) -> Vec<Vec<usize>> {
        let v = self.sides[c];
        let mut out = Vec::new();
        for k in 0..v {
            out.push(
                (0..v + 2)
                    .map(|x| if x < v { (x + k) % v } else { x })
                    .collect(),
            );
            out.push(
                (0..v + 2)
                    .map(|x| match x {
                        _ if x < v => (2 * v - x + k) % v,
                        _ if x == v => v + 1,
                        _ => v,
                    })
                    .collect(),
            );
        }
        out
    }

    /// Face map of cell `c` under a vertex map (local face indices).
    fn face_map(&self, c: usize, m: &[usize]) -> Vec<usize> {
        let base = self.first_face[c];
        let n = 2 * self.sides[c];
        (0..n)
            .map(|lf| {
                let img = self.faces[base + lf].1.map(|x| m[x]);
                (0..n)
                    .find(|&t| self.faces[base + t].1 == img)
                    .expect("symmetry maps faces to faces")
            })
            .collect()
    }
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu((0..n).collect())
    }
    fn find(&mut self, x: usize) -> usize {
        let p = self.0[x];
        if p == x {
            return x;
        }
        let r = self.find(p);
        self.0[x] = r;
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        self.0[a] = b;
    }
}

/// Link data of a pole-to-pole face pairing: per vertex class the Euler
/// characteristic and whether it contains poles / equatorial vertices; plus
/// whether some edge is glued to itself reversed.
pub struct OracleLinks {
    pub eulers: Vec<i64>,
    pub polar: Vec<(bool, bool)>,
    pub singular: bool,
}

impl OracleLinks {
    pub fn admissible(&self) -> bool {
        !self.singular
            && self.eulers.iter().all(|&e| e == 0)
            && self.polar.iter().filter(|p| p.0).count() == 1
            && self.polar.iter().all(|p| !(p.0 && p.1))
    }
}

pub fn links(cells: &Cells, partner: &[usize]) -> OracleLinks {
    let nv = cells.n_vertices();
    let mut verts = Dsu::new(nv);
    // directed edge (a, b) of vertex ids -> index a * nv + b
    let mut dir = Dsu::new(nv * nv);
    let mut degree = vec![0i64; nv];
    for (f, &(cell, tri)) in cells.faces.iter().enumerate() {
        for &x in &tri {
            degree[cells.vertex_id(cell, x)] += 1;
        }
        let g = partner[f];
        if g < f {
            continue;
        }
        let (gcell, gtri) = cells.faces[g];
        let a: Vec<usize> = tri.iter().map(|&x| cells.vertex_id(cell, x)).collect();
        let b: Vec<usize> = gtri.iter().map(|&x| cells.vertex_id(gcell, x)).collect();
        let phi = |k: usize| b[(3 - k) % 3];
        for k in 0..3 {
            verts.union(a[k], phi(k));
            let (x, y) = (a[k], a[(k + 1) % 3]);
            dir.union(x * nv + y, phi(k) * nv + phi((k + 1) % 3));
            dir.union(y * nv + x, phi((k + 1) % 3) * nv + phi(k));
        }
    }
    // all directed edges of the cells
    let mut directed = Vec::new();
    for &(cell, tri) in &cells.faces {
        for k in 0..3 {
            directed.push((
                cells.vertex_id(cell, tri[k]),
                cells.vertex_id(cell, tri[(k + 1) % 3]),
            ));
        }
    }
    let singular = directed
        .iter()
        .any(|&(x, y)| dir.find(x * nv + y) == dir.find(y * nv + x));
    let mut roots: Vec<usize> = (0..nv).map(|x| verts.find(x)).collect();
    let mut classes = roots.clone();
    classes.sort_unstable();
    classes.dedup();
    for r in roots.iter_mut() {
        *r = classes.binary_search(r).unwrap();
    }
    let k = classes.len();
    let mut euler = vec![0i64; k];
    let mut degree_sum = vec![0i64; k];
    let mut polar = vec![(false, false); k];
    for (cell, &v) in cells.sides.iter().enumerate() {
        for local in 0..v + 2 {
            let id = cells.vertex_id(cell, local);
            let c = roots[id];
            euler[c] += 1;
            degree_sum[c] += degree[id];
            if local >= v {
                polar[c].0 = true;
            } else {
                polar[c].1 = true;
            }
        }
    }
    for c in 0..k {
        euler[c] -= degree_sum[c] / 2;
    }
    let mut tails = std::collections::BTreeSet::new();
    for &(x, y) in &directed {
        tails.insert((dir.find(x * nv + y), x));
    }
    let mut seen = std::collections::BTreeSet::new();
    for (class, tail) in tails {
        if seen.insert(class) {
            euler[roots[tail]] += 1;
        }
    }
    OracleLinks {
        eulers: euler,
        polar,
        singular,
    }
}

/// Every perfect matching of `0..n`, as partner arrays.
pub fn for_each_matching(n: usize, mut visit: impl FnMut(&[usize])) {
    fn rec(p: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
        let Some(f) = p.iter().position(|&x| x == usize::MAX) else {
            visit(p);
            return;
        };
        for g in f + 1..p.len() {
            if p[g] == usize::MAX {
                p[f] = g;
                p[g] = f;
                rec(p, visit);
                p[f] = usize::MAX;
                p[g] = usize::MAX;
            }
        }
    }
    let mut p = vec![usize::MAX; n];
    rec(&mut p, &mut visit);
}

/// Canonical form by traversal: start from each face of a largest cell,
/// send it to face 0 and label the remaining cells in the order the partner
/// relation reaches them, each entry face becoming its new cell's first face.
/// Returns `None` for disconnected gluings.
pub fn canonical_form(cells: &Cells, partner: &[usize]) -> Option<Vec<usize>> {
    let n = cells.n_faces();
    let mut best: Option<Vec<usize>> = None;
    let maps: Vec<Vec<Vec<usize>>> = (0..cells.sides.len())
        .map(|c| {
            cells
                .vertex_maps(c)
                .iter()
                .map(|m| cells.face_map(c, m))
                .collect()
        })
        .collect();
    let mut order: Vec<usize> = (0..cells.sides.len()).collect();
    order.sort_by(|a, b| cells.sides[*b].cmp(&cells.sides[*a]).then(a.cmp(b)));
    for start in 0..n {
        let (c0, _) = cells.faces[start];
        if cells.sides[c0] != cells.sides[order[0]] {
            continue;
        }
        let mut new_of = vec![usize::MAX; n];
        let mut used = vec![false; cells.sides.len()];
        let assign = |old_face: usize, new_of: &mut Vec<usize>, used: &mut Vec<bool>| -> bool {
            let (c, _) = cells.faces[old_face];
            let Some(slot) =
                (0..cells.sides.len()).find(|&s| !used[s] && cells.sides[s] == cells.sides[c])
            else {
                return false;
            };
            used[slot] = true;
            let local = old_face - cells.first_face[c];
            let m = maps[c]
                .iter()
                .find(|m| m[local] == 0)
                .expect("faces of a dipyramid form one orbit");
            for (lf, &img) in m.iter().enumerate() {
                new_of[cells.first_face[c] + lf] = cells.first_face[slot] + img;
            }
            true
        };
        assign(start, &mut new_of, &mut used);
        let mut inverse = vec![usize::MAX; n];
        let mut x = 0;
        let mut ok = true;
        while x < n {
            for f in 0..n {
                if new_of[f] != usize::MAX {
                    inverse[new_of[f]] = f;
                }
            }
            let old = inverse[x];
            if old == usize::MAX {
                ok = false;
                break;
            }
            let y = partner[old];
            if new_of[y] == usize::MAX && !assign(y, &mut new_of, &mut used) {
                ok = false;
                break;
            }
            x += 1;
        }
        if !ok {
            return None;
        }
        let mut image = vec![0; n];
        for f in 0..n {
            image[new_of[f]] = new_of[partner[f]];
        }
        if best.as_ref().is_none_or(|b| image < *b) {
            best = Some(image);
        }
    }
    best
}

/// Invariant factors via determinantal divisors: d_k is the gcd of all k×k
/// minors and the k-th factor is d_k / d_{k-1}.
pub fn determinantal_factors(m: &[Vec<i64>]) -> Vec<i64> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut out = Vec::new();
    let mut prev = BigInt::from(1);
    for k in 1..=rows.min(cols) {
        let mut g = BigInt::zero();
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let sub: Vec<Vec<BigInt>> = rs
                    .iter()
                    .map(|&r| cs.iter().map(|&c| BigInt::from(m[r][c])).collect())
                    .collect();
                g = g.gcd(&det(sub));
            }
        }
        if g.is_zero() {
            break;
        }
        let f: BigInt = &g / &prev;
        out.push(i64::try_from(f.abs()).unwrap());
        prev = g;
    }
    out
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Bareiss fraction-free elimination.
fn det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    let mut sign = BigInt::from(1);
    let mut prev = BigInt::from(1);
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Raw and isomorphism-class counts of the admissible gluings of the given
/// dipyramids, by exhaustive matching enumeration.
pub fn admissible_counts(sides: &[usize]) -> (u64, u64) {
    let cells = Cells::new(sides);
    let mut raw = 0;
    let mut classes = std::collections::BTreeSet::new();
    for_each_matching(cells.n_faces(), |p| {
        if links(&cells, p).admissible() {
            raw += 1;
            classes.insert(canonical_form(&cells, p).expect("admissible gluings are connected"));
        }
    });
    (raw, classes.len() as u64)
}

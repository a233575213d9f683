//! Combinatorics of a disjoint union of dipyramids: global numbering of
//! faces, corners and edges, and the symmetry group of the inventory.

use std::collections::HashMap;

use super::Inventory;

/// Local vertex ids of a `v`-sided dipyramid: `0..v` equatorial, `v` north,
/// `v + 1` south. Face `i < v` is `(N, eq_i, eq_{i+1})`, face `v + i` is
/// `(S, eq_{i+1}, eq_i)`; both are listed pole first in the boundary
/// orientation induced from outside.
pub(crate) fn dipyramid_faces(v: usize) -> Vec<[usize; 3]> {
    let n = v;
    let s = v + 1;
    let mut faces = Vec::with_capacity(2 * v);
    for i in 0..v {
        faces.push([n, i, (i + 1) % v]);
    }
    for i in 0..v {
        faces.push([s, (i + 1) % v, i]);
    }
    faces
}

/// Orientation-preserving symmetries of a dipyramid fixing the pole pair, as
/// vertex maps: rotations of the equator, each optionally composed with the
/// half-turn exchanging the poles.
fn dipyramid_symmetries(v: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(2 * v);
    for flip in [false, true] {
        for k in 0..v {
            let mut map = vec![0; v + 2];
            for (i, m) in map.iter_mut().enumerate().take(v) {
                let j = if flip { (v - i) % v } else { i };
                *m = (j + k) % v;
            }
            map[v] = if flip { v + 1 } else { v };
            map[v + 1] = if flip { v } else { v + 1 };
            out.push(map);
        }
    }
    out
}

#[derive(Clone, Debug)]
pub(crate) struct Complex {
    pub sides: Vec<usize>,
    pub n_faces: usize,
    pub n_edges: usize,
    pub n_corners: usize,
    pub face_cell: Vec<usize>,
    /// Global corner ids of each face, pole first.
    pub face_corners: Vec<[usize; 3]>,
    /// Edge `k` of a face runs from corner `k` to corner `k + 1`; stores the
    /// global edge id and whether that direction is the edge's canonical one.
    pub face_edges: Vec<[(usize, bool); 3]>,
    pub corner_polar: Vec<bool>,
    pub corner_degree: Vec<usize>,
    /// Canonical tail and head corner of each edge.
    pub edge_ends: Vec<[usize; 2]>,
    /// The face containing the edge in its canonical direction, then the
    /// face containing it reversed, each with the position in that face.
    pub edge_faces: Vec<[(usize, usize); 2]>,
    /// Symmetry group as permutations of global faces.
    pub group: Vec<Vec<u8>>,
}

impl Complex {
    pub fn new(inv: &Inventory) -> Self {
        let sides: Vec<usize> = inv.polyhedra.iter().map(|d| d.sides).collect();
        let mut face_cell = Vec::new();
        let mut face_offset = Vec::new();
        let mut face_corners = Vec::new();
        let mut face_edges = Vec::new();
        let mut corner_polar = Vec::new();
        let mut corner_degree = Vec::new();
        let mut edge_ends = Vec::new();
        let mut edge_faces: Vec<[(usize, usize); 2]> = Vec::new();
        let mut per_cell_vertex_maps = Vec::new();
        for (cell, &v) in sides.iter().enumerate() {
            let corner0 = corner_polar.len();
            let face0 = face_corners.len();
            face_offset.push(face0);
            for local in 0..v + 2 {
                corner_polar.push(local >= v);
                corner_degree.push(if local >= v { v } else { 4 });
            }
            let mut edge_index: HashMap<(usize, usize), usize> = HashMap::new();
            for (lf, tri) in dipyramid_faces(v).into_iter().enumerate() {
                let f = face0 + lf;
                face_cell.push(cell);
                face_corners.push(tri.map(|x| corner0 + x));
                let mut edges = [(0usize, true); 3];
                for k in 0..3 {
                    let (a, b) = (tri[k], tri[(k + 1) % 3]);
                    let key = (a.min(b), a.max(b));
                    let forward = a < b;
                    let id = *edge_index.entry(key).or_insert_with(|| {
                        edge_ends.push([corner0 + key.0, corner0 + key.1]);
                        edge_faces.push([(usize::MAX, 0); 2]);
                        edge_ends.len() - 1
                    });
                    edge_faces[id][if forward { 0 } else { 1 }] = (f, k);
                    edges[k] = (id, forward);
                }
                face_edges.push(edges);
            }
            per_cell_vertex_maps.push(dipyramid_symmetries(v));
        }
        let n_faces = face_corners.len();
        assert!(edge_faces
            .iter()
            .all(|e| e[0].0 != usize::MAX && e[1].0 != usize::MAX));

        // face permutations of each cell symmetry
        let cell_face_perms: Vec<Vec<Vec<usize>>> = sides
            .iter()
            .zip(&per_cell_vertex_maps)
            .map(|(&v, maps)| {
                let faces = dipyramid_faces(v);
                let lookup: HashMap<[usize; 3], usize> =
                    faces.iter().enumerate().map(|(k, t)| (*t, k)).collect();
                maps.iter()
                    .map(|m| {
                        faces
                            .iter()
                            .map(|t| lookup[&t.map(|x| m[x])])
                            .collect::<Vec<usize>>()
                    })
                    .collect()
            })
            .collect();

        let mut group = Vec::new();
        for perm in cell_permutations(&sides) {
            let mut choice = vec![0usize; sides.len()];
            loop {
                let mut g = vec![0u8; n_faces];
                for (cell, &target) in perm.iter().enumerate() {
                    let fp = &cell_face_perms[cell][choice[cell]];
                    for (lf, &img) in fp.iter().enumerate() {
                        g[face_offset[cell] + lf] = (face_offset[target] + img) as u8;
                    }
                }
                group.push(g);
                // odometer over per-cell symmetry choices
                let mut c = 0;
                while c < sides.len() {
                    choice[c] += 1;
                    if choice[c] < cell_face_perms[c].len() {
                        break;
                    }
                    choice[c] = 0;
                    c += 1;
                }
                if c == sides.len() {
                    break;
                }
            }
        }

        Complex {
            sides,
            n_faces,
            n_edges: edge_ends.len(),
            n_corners: corner_polar.len(),
            face_cell,
            face_corners,
            face_edges,
            corner_polar,
            corner_degree,
            edge_ends,
            edge_faces,
            group,
        }
    }

    pub fn n_cells(&self) -> usize {
        self.sides.len()
    }

    /// Lexicographically smallest image of a pairing under the group.
    pub fn orbit_min(&self, partner: &[u8]) -> Vec<u8> {
        let mut best = partner.to_vec();
        let mut image = vec![0u8; partner.len()];
        for g in &self.group {
            for (f, &p) in partner.iter().enumerate() {
                image[g[f] as usize] = g[p as usize];
            }
            if image < best {
                best.copy_from_slice(&image);
            }
        }
        best
    }

    /// Whether no group element produces a smaller image.
    pub fn is_orbit_min(&self, partner: &[u8]) -> bool {
        let mut image = vec![0u8; partner.len()];
        for g in &self.group {
            for (f, &p) in partner.iter().enumerate() {
                image[g[f] as usize] = g[p as usize];
            }
            if image.as_slice() < partner {
                return false;
            }
        }
        true
    }
}

/// Permutations of cell indices that only exchange cells of equal size.
fn cell_permutations(sides: &[usize]) -> Vec<Vec<usize>> {
    let n = sides.len();
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(
        sides: &[usize],
        current: &mut Vec<usize>,
        used: &mut [bool],
        out: &mut Vec<Vec<usize>>,
    ) {
        let k = current.len();
        if k == sides.len() {
            out.push(current.clone());
            return;
        }
        for t in 0..sides.len() {
            if !used[t] && sides[t] == sides[k] {
                used[t] = true;
                current.push(t);
                rec(sides, current, used, out);
                current.pop();
                used[t] = false;
            }
        }
    }
    rec(sides, &mut current, &mut used, &mut out);
    out
}

//! Triangulation format:
//!
//! ```text
//! triangulation <name> <tetrahedra> <cusps>
//! tet <i> <n0> <n1> <n2> <n3> <p0> <p1> <p2> <p3>
//! shape <i> <re> <im>
//! delta <bound>
//! ```
//!
//! Face `f` of tetrahedron `i` (the face opposite vertex `f`) is glued to
//! tetrahedron `n_f`; the permutation `p_f`, written as the images of
//! `0123`, maps the vertices of `i` to those of `n_f`. The `delta` line is
//! optional and defaults to 0.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use crate::rigor::{RigorError, RigorousComplex, ShapeSolution};

use super::{records, Cursor, DecimalInterval, IoError};

/// A permutation of `{0, 1, 2, 3}` given by its images.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Perm(pub [u8; 4]);

impl Perm {
    pub const IDENTITY: Perm = Perm([0, 1, 2, 3]);

    pub fn apply(&self, v: usize) -> usize {
        self.0[v] as usize
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = [0u8; 4];
        for (k, &img) in self.0.iter().enumerate() {
            inv[img as usize] = k as u8;
        }
        Perm(inv)
    }
}

impl FromStr for Perm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bytes = s.as_bytes();
        if bytes.len() != 4 {
            return Err(format!("permutation '{s}' must have four digits"));
        }
        let mut img = [0u8; 4];
        let mut seen = [false; 4];
        for (k, b) in bytes.iter().enumerate() {
            let d = b.wrapping_sub(b'0');
            if d > 3 || seen[d as usize] {
                return Err(format!("'{s}' is not a permutation of 0123"));
            }
            seen[d as usize] = true;
            img[k] = d;
        }
        Ok(Perm(img))
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in self.0 {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TetRecord {
    pub neighbors: [usize; 4],
    pub perms: [Perm; 4],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangulationFile {
    pub name: String,
    pub cusps: usize,
    pub tets: Vec<TetRecord>,
    pub shapes: Vec<[DecimalInterval; 2]>,
    pub delta: DecimalInterval,
}

impl TriangulationFile {
    pub fn parse(text: &str) -> Result<Self, IoError> {
        let mut header: Option<(String, usize, usize)> = None;
        let mut tets: Vec<Option<TetRecord>> = Vec::new();
        let mut shapes: Vec<Option<[DecimalInterval; 2]>> = Vec::new();
        let mut delta = None;
        let mut last_line = 1;
        for (line, toks) in records(text) {
            last_line = line;
            let mut c = Cursor::new(line, &toks);
            let (col, keyword) = c.next("keyword")?;
            if header.is_none() && keyword != "triangulation" {
                return Err(c.error(col, "expected the 'triangulation' header first"));
            }
            match keyword {
                "triangulation" => {
                    if header.is_some() {
                        return Err(c.error(col, "duplicate header"));
                    }
                    let (_, name) = c.next("name")?;
                    let n: usize = c.integer("tetrahedron count")?;
                    let cusps: usize = c.integer("cusp count")?;
                    header = Some((name.to_string(), n, cusps));
                    tets = vec![None; n];
                    shapes = vec![None; n];
                }
                "tet" => {
                    let col = c.column();
                    let i: usize = c.integer("tetrahedron index")?;
                    if i >= tets.len() || tets[i].is_some() {
                        return Err(c.error(col, format!("bad or repeated tetrahedron index {i}")));
                    }
                    let mut neighbors = [0usize; 4];
                    for (f, n) in neighbors.iter_mut().enumerate() {
                        let col = c.column();
                        *n = c.integer(&format!("neighbor across face {f}"))?;
                        if *n >= tets.len() {
                            return Err(c.error(col, format!("neighbor {n} out of range")));
                        }
                    }
                    let mut perms = [Perm::IDENTITY; 4];
                    for (f, p) in perms.iter_mut().enumerate() {
                        let (col, tok) = c.next(&format!("gluing permutation for face {f}"))?;
                        *p = tok.parse().map_err(|e: String| c.error(col, e))?;
                    }
                    tets[i] = Some(TetRecord { neighbors, perms });
                }
                "shape" => {
                    let col = c.column();
                    let i: usize = c.integer("tetrahedron index")?;
                    if i >= shapes.len() || shapes[i].is_some() {
                        return Err(c.error(col, format!("bad or repeated shape index {i}")));
                    }
                    let re = c.interval("shape real part")?;
                    let im = c.interval("shape imaginary part")?;
                    shapes[i] = Some([re, im]);
                }
                "delta" => {
                    if delta.is_some() {
                        return Err(c.error(col, "duplicate delta line"));
                    }
                    let col = c.column();
                    let d = c.interval("delta")?;
                    if d.mid.is_negative() {
                        return Err(c.error(col, "delta must be non-negative"));
                    }
                    delta = Some(d);
                }
                other => return Err(c.error(col, format!("unknown keyword '{other}'"))),
            }
            c.finish()?;
        }
        let (name, n, cusps) = header.ok_or(IoError::Parse {
            line: 1,
            column: 1,
            message: "missing 'triangulation' header".into(),
        })?;
        let missing = |what: &str, i: usize| IoError::Parse {
            line: last_line,
            column: 1,
            message: format!("missing {what} for tetrahedron {i} (expected {n})"),
        };
        let tets = tets
            .into_iter()
            .enumerate()
            .map(|(i, t)| t.ok_or_else(|| missing("gluing", i)))
            .collect::<Result<Vec<_>, _>>()?;
        let shapes = shapes
            .into_iter()
            .enumerate()
            .map(|(i, s)| s.ok_or_else(|| missing("shape", i)))
            .collect::<Result<Vec<_>, _>>()?;
        let file = TriangulationFile {
            name,
            cusps,
            tets,
            shapes,
            delta: delta.unwrap_or_else(|| DecimalInterval::exact(super::Decimal::zero())),
        };
        file.check_involution()?;
        Ok(file)
    }

    /// Each gluing must be matched by the inverse gluing on the other side.
    pub fn check_involution(&self) -> Result<(), IoError> {
        for (i, t) in self.tets.iter().enumerate() {
            for face in 0..4 {
                let n = t.neighbors[face];
                let p = t.perms[face];
                let back = p.apply(face);
                let other = &self.tets[n];
                if other.neighbors[back] != i || other.perms[back] != p.inverse() {
                    return Err(IoError::Structural {
                        tet: i,
                        face,
                        message: format!(
                            "glued to face {back} of tetrahedron {n} via {p}, but that face is glued to tetrahedron {} via {}",
                            other.neighbors[back], other.perms[back]
                        ),
                    });
                }
                if n == i && back == face {
                    return Err(IoError::Structural {
                        tet: i,
                        face,
                        message: "face glued to itself".into(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn shape_solution(&self) -> Result<ShapeSolution, RigorError> {
        let shapes = self
            .shapes
            .iter()
            .map(|[re, im]| RigorousComplex::new(re.to_interval(), im.to_interval()))
            .collect();
        ShapeSolution::new(shapes, self.delta.to_interval())
    }

    pub fn serialize(&self) -> String {
        let mut out = String::new();
        writeln!(
            out,
            "triangulation {} {} {}",
            self.name,
            self.tets.len(),
            self.cusps
        )
        .unwrap();
        for (i, t) in self.tets.iter().enumerate() {
            let n = t.neighbors;
            let p = t.perms;
            writeln!(
                out,
                "tet {i} {} {} {} {} {} {} {} {}",
                n[0], n[1], n[2], n[3], p[0], p[1], p[2], p[3]
            )
            .unwrap();
        }
        for (i, [re, im]) in self.shapes.iter().enumerate() {
            writeln!(out, "shape {i} {re} {im}").unwrap();
        }
        writeln!(out, "delta {}", self.delta).unwrap();
        out
    }
}

pub fn parse_triangulation(text: &str) -> Result<TriangulationFile, IoError> {
    TriangulationFile::parse(text)
}

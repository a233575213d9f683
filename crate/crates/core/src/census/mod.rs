//! Census of Mom-2 and Mom-3 candidates as face pairings of ideal
//! dipyramids.
//!
//! A gluing pairs the triangular faces of the inventory. Face
//! `(a0, a1, a2)` (pole first) is identified with `(b0, b1, b2)` by
//! `a_k -> b_{(r - k) mod 3}`, which reverses the boundary orientation; only
//! `r = 0` sends poles to poles, so the pairing itself determines the gluing.

mod complex;
mod enumerate;
mod homology;
mod links;

use std::sync::Arc;

use thiserror::Error;

pub use enumerate::{
    enumerate_gluings, run_census, CensusOptions, CensusRecord, CensusReport, InventoryCount,
    WORKERS_ENV,
};
pub use homology::smith_normal_form;
pub use links::{
    chain_complex, homology, vertex_links, Boundaries, HomologyInvariants, VertexClass, VertexLink,
    VertexLinkReport,
};

use complex::Complex;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CensusError {
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("malformed gluing: {0}")]
    Structural(String),
    #[error("checkpoint: {0}")]
    Checkpoint(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dipyramid {
    /// Number of equatorial vertices; 4 is the octahedron.
    pub sides: usize,
}

/// A multiset of dipyramids, largest first, plus the number of valence-2
/// 3-cells flattened away.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Inventory {
    pub polyhedra: Vec<Dipyramid>,
    pub flattened: usize,
}

impl Inventory {
    pub fn from_sides(sides: &[usize]) -> Result<Self, CensusError> {
        if sides.is_empty() || sides.iter().any(|&s| s < 3) {
            return Err(CensusError::Unsupported(format!(
                "dipyramids need at least 3 sides: {sides:?}"
            )));
        }
        let mut sides = sides.to_vec();
        sides.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Inventory {
            polyhedra: sides.into_iter().map(|sides| Dipyramid { sides }).collect(),
            flattened: 0,
        })
    }

    /// `3+3`, `4`, `5`, ...
    pub fn tag(&self) -> String {
        let parts: Vec<String> = self.polyhedra.iter().map(|d| d.sides.to_string()).collect();
        parts.join("+")
    }

    pub fn valence(&self) -> usize {
        self.polyhedra.iter().map(|d| d.sides).sum::<usize>() + 2 * self.flattened
    }

    pub fn face_count(&self) -> usize {
        self.polyhedra.iter().map(|d| 2 * d.sides).sum()
    }

    pub(crate) fn complex(&self) -> Arc<Complex> {
        use std::collections::HashMap;
        use std::sync::Mutex;
        use std::sync::OnceLock;
        static CACHE: OnceLock<Mutex<HashMap<Vec<usize>, Arc<Complex>>>> = OnceLock::new();
        let key: Vec<usize> = self.polyhedra.iter().map(|d| d.sides).collect();
        let cache = CACHE.get_or_init(Default::default);
        let mut map = cache.lock().expect("complex cache poisoned");
        map.entry(key)
            .or_insert_with(|| Arc::new(Complex::new(self)))
            .clone()
    }
}

/// Inventories for Mom-`n`: partitions of `3n` into `n` parts of size at
/// least 2, with the parts of size 2 flattened away.
pub fn polyhedron_inventories(n: usize) -> Result<Vec<Inventory>, CensusError> {
    if !(2..=3).contains(&n) {
        return Err(CensusError::Unsupported(format!(
            "Mom-{n} inventories (only n = 2, 3)"
        )));
    }
    let mut out = Vec::new();
    let mut parts = Vec::new();
    partitions(3 * n, n, 3 * n, &mut parts, &mut out);
    let mut inventories: Vec<Inventory> = out
        .into_iter()
        .map(|p: Vec<usize>| {
            let flattened = p.iter().filter(|&&s| s == 2).count();
            Inventory {
                polyhedra: p
                    .into_iter()
                    .filter(|&s| s > 2)
                    .map(|sides| Dipyramid { sides })
                    .collect(),
                flattened,
            }
        })
        .collect();
    inventories.sort_by(|a, b| {
        a.polyhedra
            .len()
            .cmp(&b.polyhedra.len())
            .then(b.polyhedra.cmp(&a.polyhedra))
    });
    Ok(inventories)
}

/// Non-increasing partitions of `total` into exactly `count` parts ≥ 2.
fn partitions(
    total: usize,
    count: usize,
    max: usize,
    cur: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if count == 0 {
        if total == 0 {
            out.push(cur.clone());
        }
        return;
    }
    for part in (2..=max.min(total)).rev() {
        if total - part < 2 * (count - 1) {
            continue;
        }
        cur.push(part);
        partitions(total - part, count - 1, part, cur, out);
        cur.pop();
    }
}

/// A face pairing of an inventory. `partner[f]` is the face glued to `f`
/// and `rotation[f]` the `r` of the identification.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GluingDescription {
    pub inventory: Inventory,
    pub partner: Vec<usize>,
    pub rotation: Vec<u8>,
}

impl GluingDescription {
    pub fn new(inventory: Inventory, partner: Vec<usize>) -> Result<Self, CensusError> {
        let rotation = vec![0; partner.len()];
        let g = GluingDescription {
            inventory,
            partner,
            rotation,
        };
        g.check()?;
        Ok(g)
    }

    /// Every face matched exactly once, never to itself, with agreeing
    /// rotations on both sides.
    pub fn check(&self) -> Result<(), CensusError> {
        let n = self.inventory.face_count();
        if self.partner.len() != n || self.rotation.len() != n {
            return Err(CensusError::Structural(format!(
                "expected {n} faces, got {} partners and {} rotations",
                self.partner.len(),
                self.rotation.len()
            )));
        }
        for (f, &g) in self.partner.iter().enumerate() {
            if g >= n || g == f || self.partner[g] != f {
                return Err(CensusError::Structural(format!(
                    "face {f} is paired with {g}, which is not a matching"
                )));
            }
            if self.rotation[f] > 2 || self.rotation[g] != self.rotation[f] {
                return Err(CensusError::Structural(format!(
                    "faces {f} and {g} carry inconsistent rotations"
                )));
            }
        }
        Ok(())
    }

    /// Whether every identification sends poles to poles.
    pub fn is_polar(&self) -> bool {
        self.rotation.iter().all(|&r| r == 0)
    }

    /// Applies the symmetry `g` (a face permutation) of the inventory.
    pub(crate) fn relabeled(&self, g: &[u8]) -> GluingDescription {
        let mut partner = vec![0; self.partner.len()];
        let mut rotation = vec![0; self.partner.len()];
        for (f, &p) in self.partner.iter().enumerate() {
            partner[g[f] as usize] = g[p] as usize;
            rotation[g[f] as usize] = self.rotation[f];
        }
        GluingDescription {
            inventory: self.inventory.clone(),
            partner,
            rotation,
        }
    }

    /// Number of symmetries of the inventory.
    pub fn symmetry_count(&self) -> usize {
        self.inventory.complex().group.len()
    }

    /// Relabel by the `k`-th symmetry of the inventory.
    pub fn apply_symmetry(&self, k: usize) -> GluingDescription {
        let c = self.inventory.complex();
        self.relabeled(&c.group[k])
    }
}

const DIGITS: &[u8] = b"0123456789abcdefghijklmnopqrstuvwxyz";

fn encode(partner: &[u8]) -> String {
    partner
        .iter()
        .map(|&p| DIGITS[p as usize] as char)
        .collect()
}

/// Relabeling-invariant name: the inventory tag and the smallest pairing
/// encoding over all symmetries of the inventory.
pub fn canonical_signature(g: &GluingDescription) -> String {
    let c = g.inventory.complex();
    let partner: Vec<u8> = g.partner.iter().map(|&p| p as u8).collect();
    format!("{}|{}", g.inventory.tag(), encode(&c.orbit_min(&partner)))
}

/// Inverse of [`canonical_signature`] (yields the canonical representative).
pub fn gluing_from_signature(sig: &str) -> Result<GluingDescription, CensusError> {
    let bad = || CensusError::Structural(format!("malformed signature '{sig}'"));
    let (tag, code) = sig.split_once('|').ok_or_else(bad)?;
    let sides: Vec<usize> = tag
        .split('+')
        .map(|s| s.parse().map_err(|_| bad()))
        .collect::<Result<_, _>>()?;
    let inventory = Inventory::from_sides(&sides)?;
    let partner: Vec<usize> = code
        .bytes()
        .map(|b| DIGITS.iter().position(|&d| d == b).ok_or_else(bad))
        .collect::<Result<_, _>>()?;
    GluingDescription::new(inventory, partner)
}

//! Depth-first enumeration of pole-preserving face pairings, the census
//! runner and its checkpoint file.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::PathBuf;
use std::sync::Mutex;

use rayon::prelude::*;

use crate::io::write_atomic;

use super::complex::Complex;
use super::links::{glue_edges, homology, links_of, target_edge_classes, EdgeClasses};
use super::{
    canonical_signature, gluing_from_signature, polyhedron_inventories, CensusError,
    GluingDescription, HomologyInvariants, Inventory,
};

const UNMATCHED: u8 = u8::MAX;

struct Search<'a, F: FnMut(&[u8])> {
    c: &'a Complex,
    partner: Vec<u8>,
    edges: EdgeClasses,
    target: usize,
    remaining: usize,
    leaf: F,
}

impl<F: FnMut(&[u8])> Search<'_, F> {
    fn feasible(&self) -> bool {
        let classes = self.edges.classes();
        classes >= self.target && classes <= self.target + 3 * self.remaining
    }

    fn pair(&mut self, f: usize, g: usize) -> bool {
        self.partner[f] = g as u8;
        self.partner[g] = f as u8;
        self.remaining -= 1;
        glue_edges(self.c, &mut self.edges, f, g) && self.feasible()
    }

    fn unpair(&mut self, f: usize, g: usize) {
        for _ in 0..3 {
            self.edges.undo();
        }
        self.partner[f] = UNMATCHED;
        self.partner[g] = UNMATCHED;
        self.remaining += 1;
    }

    fn run(&mut self) {
        let Some(f) = self.partner.iter().position(|&p| p == UNMATCHED) else {
            (self.leaf)(&self.partner);
            return;
        };
        for g in f + 1..self.c.n_faces {
            if self.partner[g] != UNMATCHED {
                continue;
            }
            if self.pair(f, g) {
                self.run();
            }
            self.unpair(f, g);
        }
    }
}

/// Visits every pairing whose first pair is `(0, first)`, with no edge
/// glued to itself reversed and Euler characteristic zero.
fn search_branch<F: FnMut(&[u8])>(c: &Complex, first: usize, leaf: F) {
    let mut s = Search {
        c,
        partner: vec![UNMATCHED; c.n_faces],
        edges: EdgeClasses::new(c.n_edges),
        target: target_edge_classes(c),
        remaining: c.n_faces / 2,
        leaf,
    };
    if s.pair(0, first) {
        s.run();
    }
    s.unpair(0, first);
}

fn to_gluing(inv: &Inventory, partner: &[u8]) -> GluingDescription {
    GluingDescription {
        inventory: inv.clone(),
        partner: partner.iter().map(|&p| p as usize).collect(),
        rotation: vec![0; partner.len()],
    }
}

/// Pole-preserving pairings of the inventory with no edge glued to itself
/// reversed and Euler characteristic zero, one per symmetry orbit (the
/// lexicographically smallest), in lexicographic order.
pub fn enumerate_gluings(inv: &Inventory) -> Vec<GluingDescription> {
    let c = inv.complex();
    let branches: Vec<Vec<Vec<u8>>> = (1..c.n_faces)
        .into_par_iter()
        .map(|first| {
            let mut out = Vec::new();
            search_branch(&c, first, |p| {
                if c.is_orbit_min(p) {
                    out.push(p.to_vec());
                }
            });
            out
        })
        .collect();
    branches
        .into_iter()
        .flatten()
        .map(|p| to_gluing(inv, &p))
        .collect()
}

/// Outcome of one first-level branch: the number of labeled pairings
/// retained and the signatures of the orbit representatives among them.
#[derive(Clone, Debug, PartialEq, Eq)]
struct BranchResult {
    raw: u64,
    signatures: Vec<String>,
}

fn run_branch(inv: &Inventory, c: &Complex, first: usize) -> BranchResult {
    let mut raw = 0;
    let mut signatures = Vec::new();
    let rotation = vec![0u8; c.n_faces];
    let mut partner = vec![0usize; c.n_faces];
    search_branch(c, first, |p| {
        for (dst, &src) in partner.iter_mut().zip(p) {
            *dst = src as usize;
        }
        if !links_of(c, &partner, &rotation).is_admissible() {
            return;
        }
        raw += 1;
        if c.is_orbit_min(p) {
            signatures.push(canonical_signature(&to_gluing(inv, p)));
        }
    });
    BranchResult { raw, signatures }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusRecord {
    pub signature: String,
    pub inventory: String,
    pub tori: usize,
    pub h1: HomologyInvariants,
}

impl fmt::Display for CensusRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GLUING sig={} inventory={} links=torus×{} h1={}",
            self.signature, self.inventory, self.tori, self.h1
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InventoryCount {
    pub inventory: String,
    /// Retained labeled pairings.
    pub raw: u64,
    /// Retained symmetry orbits.
    pub deduped: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusReport {
    pub mom: usize,
    pub records: Vec<CensusRecord>,
    pub counts: Vec<InventoryCount>,
}

impl CensusReport {
    pub fn total_deduped(&self) -> u64 {
        self.counts.iter().map(|c| c.deduped).sum()
    }

    pub fn total_raw(&self) -> u64 {
        self.counts.iter().map(|c| c.raw).sum()
    }
}

impl fmt::Display for CensusReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CENSUS mom={}", self.mom)?;
        for r in &self.records {
            writeln!(f, "{r}")?;
        }
        for c in &self.counts {
            writeln!(
                f,
                "COUNT inventory={} raw={} deduped={}",
                c.inventory, c.raw, c.deduped
            )?;
        }
        writeln!(
            f,
            "TOTAL raw={} deduped={}",
            self.total_raw(),
            self.total_deduped()
        )
    }
}

#[derive(Clone, Debug, Default)]
pub struct CensusOptions {
    /// Worker threads; `None` reads `MOMTOOLS_WORKERS`, else all cores.
    pub workers: Option<usize>,
    /// Checkpoint file, rewritten after every completed first-level branch.
    pub checkpoint: Option<PathBuf>,
    /// Load completed branches from the checkpoint before searching.
    pub resume: bool,
}

pub const WORKERS_ENV: &str = "MOMTOOLS_WORKERS";

type Completed = BTreeMap<(String, usize), BranchResult>;

fn checkpoint_text(mom: usize, done: &Completed) -> String {
    let mut s = format!("census mom={mom}\n");
    for ((inv, first), r) in done {
        s.push_str(&format!("branch {inv} {first} raw={}\n", r.raw));
        for sig in &r.signatures {
            s.push_str(&format!("sig {sig}\n"));
        }
    }
    s
}

fn parse_checkpoint(text: &str, mom: usize) -> Result<Completed, CensusError> {
    let bad = |line: usize, msg: &str| CensusError::Checkpoint(format!("line {line}: {msg}"));
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h.trim() == format!("census mom={mom}") => {}
        _ => return Err(bad(1, &format!("expected header 'census mom={mom}'"))),
    }
    let mut done = Completed::new();
    let mut current: Option<(String, usize)> = None;
    for (i, line) in lines {
        let n = i + 1;
        let words: Vec<&str> = line.split_whitespace().collect();
        match words.as_slice() {
            [] => {}
            ["branch", inv, first, raw] => {
                let first: usize = first.parse().map_err(|_| bad(n, "bad branch index"))?;
                let raw: u64 = raw
                    .strip_prefix("raw=")
                    .and_then(|r| r.parse().ok())
                    .ok_or_else(|| bad(n, "bad raw count"))?;
                let key = (inv.to_string(), first);
                done.insert(
                    key.clone(),
                    BranchResult {
                        raw,
                        signatures: Vec::new(),
                    },
                );
                current = Some(key);
            }
            ["sig", sig] => {
                let key = current
                    .as_ref()
                    .ok_or_else(|| bad(n, "sig before branch"))?;
                gluing_from_signature(sig).map_err(|e| bad(n, &e.to_string()))?;
                done.get_mut(key)
                    .expect("branch inserted")
                    .signatures
                    .push(sig.to_string());
            }
            _ => return Err(bad(n, "unrecognized line")),
        }
    }
    Ok(done)
}

fn workers(opts: &CensusOptions) -> Result<usize, CensusError> {
    if let Some(w) = opts.workers {
        return Ok(w.max(1));
    }
    match std::env::var(WORKERS_ENV) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&w| w > 0)
            .ok_or_else(|| CensusError::Unsupported(format!("{WORKERS_ENV}={v}"))),
        Err(_) => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
    }
}

/// Runs the Mom-`mom` census over all inventories. The output does not
/// depend on the number of workers or on resuming.
pub fn run_census(mom: usize, opts: &CensusOptions) -> Result<CensusReport, CensusError> {
    let inventories = polyhedron_inventories(mom)?;
    let mut done = Completed::new();
    if opts.resume {
        if let Some(path) = &opts.checkpoint {
            if path.exists() {
                let text = fs::read_to_string(path)
                    .map_err(|e| CensusError::Checkpoint(format!("{}: {e}", path.display())))?;
                done = parse_checkpoint(&text, mom)?;
            }
        }
    }
    let known: Vec<String> = inventories.iter().map(Inventory::tag).collect();
    if let Some(((inv, _), _)) = done.iter().find(|((inv, _), _)| !known.contains(inv)) {
        return Err(CensusError::Checkpoint(format!(
            "unknown inventory '{inv}' for mom={mom}"
        )));
    }

    let mut jobs = Vec::new();
    for inv in &inventories {
        let c = inv.complex();
        for first in 1..c.n_faces {
            if !done.contains_key(&(inv.tag(), first)) {
                jobs.push((inv.clone(), first));
            }
        }
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers(opts)?)
        .build()
        .map_err(|e| CensusError::Unsupported(e.to_string()))?;
    let shared = Mutex::new((done, None::<CensusError>));
    pool.install(|| {
        jobs.par_iter().for_each(|(inv, first)| {
            let c = inv.complex();
            let result = run_branch(inv, &c, *first);
            let mut guard = shared.lock().expect("census state poisoned");
            guard.0.insert((inv.tag(), *first), result);
            if let Some(path) = &opts.checkpoint {
                let text = checkpoint_text(mom, &guard.0);
                if let Err(e) = write_atomic(path, text.as_bytes()) {
                    guard
                        .1
                        .get_or_insert(CensusError::Checkpoint(format!("{}: {e}", path.display())));
                }
            }
        });
    });
    let (done, failure) = shared.into_inner().expect("census state poisoned");
    if let Some(e) = failure {
        return Err(e);
    }

    let mut records = Vec::new();
    let mut counts = Vec::new();
    for inv in &inventories {
        let tag = inv.tag();
        let c = inv.complex();
        let mut raw = 0;
        let mut sigs = Vec::new();
        for first in 1..c.n_faces {
            let r = done
                .get(&(tag.clone(), first))
                .ok_or_else(|| CensusError::Checkpoint(format!("branch {tag} {first} missing")))?;
            raw += r.raw;
            sigs.extend(r.signatures.iter().cloned());
        }
        sigs.sort();
        let before = sigs.len();
        sigs.dedup();
        if sigs.len() != before {
            return Err(CensusError::Structural(format!(
                "duplicate orbit representative in inventory {tag}"
            )));
        }
        for sig in &sigs {
            records.push(record_for(sig)?);
        }
        counts.push(InventoryCount {
            inventory: tag,
            raw,
            deduped: sigs.len() as u64,
        });
    }
    Ok(CensusReport {
        mom,
        records,
        counts,
    })
}

fn record_for(sig: &str) -> Result<CensusRecord, CensusError> {
    let g = gluing_from_signature(sig)?;
    let links = super::vertex_links(&g)?;
    if !links.is_admissible() {
        return Err(CensusError::Structural(format!(
            "signature {sig} does not describe an admissible gluing"
        )));
    }
    Ok(CensusRecord {
        signature: sig.to_string(),
        inventory: g.inventory.tag(),
        tori: links.links.len(),
        h1: homology(&g)?,
    })
}

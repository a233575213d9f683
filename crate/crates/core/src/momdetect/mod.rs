//! Combinatorial Mom-n structures, torus-friendliness, handle-safety
//! thresholds and the cusp area/volume lower bounds.

mod area;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::geometry::TripleClass;
use crate::rigor::Interval;

pub use area::{area_lower_bound, AreaBoundReport, AreaCase, AreaFlags};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MomError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("cannot certify {what}: enclosure {enclosure}")]
    Uncertifiable { what: String, enclosure: Interval },
}

/// One of the distinct triple classes behind a [`TripleClass`] entry:
/// copy `copy` of `entries[entry]`, with `copy < multiplicity`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClassRef {
    pub entry: usize,
    pub copy: usize,
}

/// `n` distinct triple classes whose types use exactly `n` orthopair indices.
///
/// Classes of the same type cannot be told apart, so a structure records how
/// many classes it takes from each entry (as copies `0..k`); `realizations`
/// counts the subsets of actual classes it stands for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CombinatorialMomStructure {
    pub triples: Vec<ClassRef>,
    pub kinds: Vec<[usize; 3]>,
    pub pair_set: BTreeSet<usize>,
    pub realizations: u64,
}

impl CombinatorialMomStructure {
    pub fn n(&self) -> usize {
        self.triples.len()
    }

    /// The cardinality identity: `n` triples, `n` indices, every index used.
    pub fn is_consistent(&self) -> bool {
        let used: BTreeSet<usize> = self.kinds.iter().flatten().copied().collect();
        self.triples.len() >= 2
            && self.kinds.len() == self.triples.len()
            && self.pair_set.len() == self.triples.len()
            && used == self.pair_set
    }
}

impl fmt::Display for CombinatorialMomStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self.pair_set.iter().map(|k| k.to_string()).collect();
        let triples: Vec<String> = self
            .kinds
            .iter()
            .map(|[a, b, c]| format!("({a},{b},{c})"))
            .collect();
        write!(
            f,
            "MOM {} pairset={{{}}} triples={} torus_friendly={}",
            self.n(),
            pairs.join(","),
            triples.join(";"),
            is_torus_friendly(self)
        )
    }
}

fn binomial(n: usize, k: usize) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i as u64 + 1))
}

/// All combinatorial Mom-`n` structures among the given triple classes.
///
/// Subsets are built entry by entry, taking `0..=multiplicity` classes from
/// each, and pruned as soon as more than `n` indices are in use. The search
/// is sharded over the first entry used; results come out in lexicographic
/// order of entry counts.
pub fn find_mom_structures(triples: &[TripleClass], n: usize) -> Vec<CombinatorialMomStructure> {
    if n < 2 {
        return Vec::new();
    }
    let kinds: Vec<[usize; 3]> = triples
        .iter()
        .map(|t| {
            let mut k = t.kind;
            k.sort_unstable();
            k
        })
        .collect();
    let out: Vec<CombinatorialMomStructure> = (0..triples.len())
        .into_par_iter()
        .flat_map_iter(|first| {
            let mut found = Vec::new();
            let mut counts = vec![0usize; triples.len()];
            let limit = triples[first].multiplicity.min(n);
            for c in 1..=limit {
                counts[first] = c;
                let used: BTreeSet<usize> = kinds[first].iter().copied().collect();
                if used.len() <= n {
                    extend(
                        triples,
                        &kinds,
                        n,
                        first + 1,
                        c,
                        &used,
                        &mut counts,
                        &mut found,
                    );
                }
            }
            found
        })
        .collect();
    for s in &out {
        assert!(s.is_consistent(), "inconsistent structure {s}");
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn extend(
    triples: &[TripleClass],
    kinds: &[[usize; 3]],
    n: usize,
    next: usize,
    taken: usize,
    used: &BTreeSet<usize>,
    counts: &mut Vec<usize>,
    found: &mut Vec<CombinatorialMomStructure>,
) {
    if taken == n {
        if used.len() == n {
            found.push(build(triples, kinds, counts, used));
        }
        return;
    }
    for e in next..triples.len() {
        let mut with: BTreeSet<usize> = used.clone();
        with.extend(kinds[e].iter().copied());
        if with.len() > n {
            continue;
        }
        let limit = triples[e].multiplicity.min(n - taken);
        for c in 1..=limit {
            counts[e] = c;
            extend(triples, kinds, n, e + 1, taken + c, &with, counts, found);
        }
        counts[e] = 0;
    }
}

fn build(
    triples: &[TripleClass],
    kinds: &[[usize; 3]],
    counts: &[usize],
    used: &BTreeSet<usize>,
) -> CombinatorialMomStructure {
    let mut refs = Vec::new();
    let mut ks = Vec::new();
    let mut realizations = 1u64;
    for (entry, &c) in counts.iter().enumerate() {
        for copy in 0..c {
            refs.push(ClassRef { entry, copy });
            ks.push(kinds[entry]);
        }
        if c > 0 {
            realizations *= binomial(triples[entry].multiplicity, c);
        }
    }
    CombinatorialMomStructure {
        triples: refs,
        kinds: ks,
        pair_set: used.clone(),
        realizations,
    }
}

/// False exactly when the structure contains exactly two triple classes of a
/// common type `(k, l, m)` with `k`, `l`, `m` distinct.
pub fn is_torus_friendly(s: &CombinatorialMomStructure) -> bool {
    let mut by_kind: BTreeMap<[usize; 3], usize> = BTreeMap::new();
    for k in &s.kinds {
        let mut k = *k;
        k.sort_unstable();
        *by_kind.entry(k).or_default() += 1;
    }
    !by_kind
        .iter()
        .any(|(k, &count)| k[0] != k[1] && k[1] != k[2] && count == 2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum HandleSafety {
    Safe,
    Conditional,
    Large,
}

impl fmt::Display for HandleSafety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HandleSafety::Safe => "SAFE",
            HandleSafety::Conditional => "CONDITIONAL",
            HandleSafety::Large => "LARGE",
        })
    }
}

/// `1.5152`, widened by one ulp on each side.
pub fn large_threshold() -> Interval {
    let x = 1.5152f64;
    Interval::new(x.next_down(), x.next_up()).expect("ordered")
}

pub fn sqrt_two() -> Interval {
    Interval::point(2.0).sqrt().expect("positive")
}

/// Classifies `e = e_n` against `√2` and `1.5152`. Every comparison must be
/// certified; an enclosure meeting a threshold is uncertifiable.
pub fn classify_handle_safety(e: Interval) -> Result<HandleSafety, MomError> {
    if e.hi() < 1.0 {
        return Err(MomError::Precondition(format!("e = {e} is below 1")));
    }
    let s = sqrt_two();
    let t = large_threshold();
    if e.hi() <= s.lo() {
        Ok(HandleSafety::Safe)
    } else if e.lo() > s.hi() && e.hi() <= t.lo() {
        Ok(HandleSafety::Conditional)
    } else if e.lo() > t.hi() {
        Ok(HandleSafety::Large)
    } else {
        Err(MomError::Uncertifiable {
            what: "handle-safety class".into(),
            enclosure: e,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn classes(kinds: &[[usize; 3]]) -> Vec<TripleClass> {
        kinds.iter().map(|&k| TripleClass::new(k, 1)).collect()
    }

    #[test]
    fn mom2_instance() {
        let t = classes(&[[1, 1, 2], [1, 2, 2]]);
        let found = find_mom_structures(&t, 2);
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].pair_set, BTreeSet::from([1, 2]));
        assert!(is_torus_friendly(&found[0]));
        assert_eq!(
            found[0].to_string(),
            "MOM 2 pairset={1,2} triples=(1,1,2);(1,2,2) torus_friendly=true"
        );
    }

    #[test]
    fn single_all_distinct_class_gives_nothing() {
        let t = classes(&[[1, 2, 3]]);
        for n in 1..=3 {
            assert!(find_mom_structures(&t, n).is_empty());
        }
    }

    #[test]
    fn two_copies_of_distinct_type_not_torus_friendly() {
        let t = vec![
            TripleClass::new([1, 2, 3], 2),
            TripleClass::new([1, 1, 2], 1),
        ];
        let found = find_mom_structures(&t, 3);
        let pair = found
            .iter()
            .find(|s| s.kinds.iter().filter(|k| **k == [1, 2, 3]).count() == 2)
            .unwrap();
        assert!(!is_torus_friendly(pair));
        assert_eq!(pair.realizations, 1);
        let three = vec![TripleClass::new([1, 2, 3], 3)];
        let found = find_mom_structures(&three, 3);
        assert_eq!(found.len(), 1);
        assert!(is_torus_friendly(&found[0]));
    }

    #[test]
    fn thresholds() {
        assert_eq!(
            classify_handle_safety(Interval::ONE),
            Ok(HandleSafety::Safe)
        );
        assert_eq!(
            classify_handle_safety(Interval::point(1.45)),
            Ok(HandleSafety::Conditional)
        );
        assert_eq!(
            classify_handle_safety(Interval::point(1.6)),
            Ok(HandleSafety::Large)
        );
        assert!(matches!(
            classify_handle_safety(Interval::new(1.40, 1.42).unwrap()),
            Err(MomError::Uncertifiable { .. })
        ));
        assert!(matches!(
            classify_handle_safety(Interval::point(1.5152)),
            Err(MomError::Uncertifiable { .. })
        ));
        assert!(matches!(
            classify_handle_safety(Interval::point(0.5)),
            Err(MomError::Precondition(_))
        ));
    }
}

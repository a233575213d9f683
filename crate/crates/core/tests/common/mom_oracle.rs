//! Mom-n structures by exhaustive subset enumeration.

use std::collections::BTreeSet;

use momtools::geometry::TripleClass;

/// Every subset of actual (expanded) classes, reduced to per-entry counts.
pub fn brute_force(triples: &[TripleClass], n: usize) -> (BTreeSet<Vec<usize>>, u64) {
    let expanded: Vec<usize> = triples
        .iter()
        .enumerate()
        .flat_map(|(e, t)| std::iter::repeat_n(e, t.multiplicity))
        .collect();
    let mut shapes = BTreeSet::new();
    let mut raw = 0u64;
    for mask in 0u32..(1 << expanded.len()) {
        if mask.count_ones() as usize != n {
            continue;
        }
        let mut counts = vec![0usize; triples.len()];
        let mut used = BTreeSet::new();
        for (bit, &e) in expanded.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                counts[e] += 1;
                used.extend(triples[e].kind);
            }
        }
        if used.len() == n {
            shapes.insert(counts);
            raw += 1;
        }
    }
    (shapes, raw)
}

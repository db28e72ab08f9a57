//! Exhaustive generation of meet semilattices up to isomorphism.
//!
//! Every finite meet semilattice arises from a smaller one by adding a new
//! maximal element whose strict down-set `D` is a nonempty down-closed subset
//! such that `D ∩ ↓y` has a unique maximum for every existing `y` (that
//! intersection is the new meet, and old meets are untouched). Removing any
//! maximal element reverses the step, so level-by-level extension with
//! canonical-form deduplication visits every isomorphism class exactly once.

use std::collections::BTreeMap;

use crate::canon::{canonical_form, canonical_labeling, CanonicalForm};
use crate::poset::{ElemSet, Structure};

/// One entry of the isomorphism census.
#[derive(Clone, Debug)]
pub struct CensusRecord {
    pub canonical_form: CanonicalForm,
    pub n: usize,
    /// True iff some element fails to generate a double-chain set.
    pub special: bool,
    /// Element (in the structure's own indexing) witnessing the failure.
    pub witness_element: Option<usize>,
}

/// All nonempty down-closed subsets `D` of `s` such that every `D ∩ ↓y` has a
/// unique maximum, i.e. the valid strict down-sets for a new maximal element.
fn extension_downsets(s: &Structure) -> Vec<ElemSet> {
    let n = s.len();
    let mut out = Vec::new();
    'subsets: for bits in 1..(1u64 << n) {
        let d = ElemSet(bits);
        for i in d.iter() {
            if !s.down_set(i).is_subset_of(d) {
                continue 'subsets;
            }
        }
        for y in 0..n {
            let t = d.intersect(s.down_set(y));
            let top = t.max().expect("down-closed nonempty sets contain the bottom");
            if !t.is_subset_of(s.down_set(top)) {
                continue 'subsets;
            }
        }
        out.push(d);
    }
    out
}

/// Adds a new maximal element with strict down-set `d`.
fn extend(s: &Structure, d: ElemSet) -> Structure {
    let n = s.len();
    let mut covers: Vec<(usize, usize)> = s.covers().to_vec();
    for a in d.iter() {
        // lower covers of the new element: maximal elements of d
        let above_in_d = s.up_set(a).intersect(d).difference(ElemSet::singleton(a));
        if above_in_d.is_empty() {
            covers.push((a, n));
        }
    }
    Structure::new(n + 1, &covers).expect("extension preserves the semilattice property")
}

fn singleton() -> Structure {
    Structure::new(1, &[]).expect("one point")
}

/// Extends every parent once and merges children by canonical form.
fn next_level(parents: &[Structure], threads: usize) -> BTreeMap<CanonicalForm, Structure> {
    let work = |chunk: &[Structure]| {
        let mut local: BTreeMap<CanonicalForm, Structure> = BTreeMap::new();
        for p in chunk {
            for d in extension_downsets(p) {
                let child = extend(p, d);
                let (form, perm) = canonical_labeling(&child);
                local.entry(form).or_insert_with(|| {
                    child.relabeled(&perm).expect("canonical labeling is valid")
                });
            }
        }
        local
    };
    if threads <= 1 || parents.len() < 2 * threads {
        return work(parents);
    }
    let chunk_size = parents.len().div_ceil(threads);
    let mut merged: BTreeMap<CanonicalForm, Structure> = BTreeMap::new();
    std::thread::scope(|scope| {
        let handles: Vec<_> = parents
            .chunks(chunk_size)
            .map(|chunk| scope.spawn(move || work(chunk)))
            .collect();
        for h in handles {
            for (k, v) in h.join().expect("enumeration worker panicked") {
                merged.entry(k).or_insert(v);
            }
        }
    });
    merged
}

/// All meet semilattices with exactly `n` elements, one canonical
/// representative per isomorphism class, sorted by canonical form.
pub fn enumerate_meet_semilattices(n: usize) -> Vec<Structure> {
    enumerate_with_threads(n, 1)
}

pub fn enumerate_with_threads(n: usize, threads: usize) -> Vec<Structure> {
    assert!(n >= 1, "need at least one element");
    let mut level: Vec<Structure> = vec![singleton()];
    for _ in 1..n {
        level = next_level(&level, threads).into_values().collect();
    }
    level
}

/// Census counts for every level `1..=n`.
pub fn level_counts(n: usize, threads: usize) -> Vec<u64> {
    assert!(n >= 1);
    let mut counts = vec![1u64];
    let mut level: Vec<Structure> = vec![singleton()];
    for _ in 1..n {
        level = next_level(&level, threads).into_values().collect();
        counts.push(level.len() as u64);
    }
    counts
}

/// Keeps the structures containing an element that fails the double-chain
/// property (equivalently: an element with at least three lower covers whose
/// closure residual has width at least three).
pub fn filter_special(structures: &[Structure]) -> Vec<CensusRecord> {
    let mut records: Vec<CensusRecord> = structures
        .iter()
        .filter_map(|s| {
            let witness = (0..s.len()).find(|&x| !s.generates_double_chain(x))?;
            Some(CensusRecord {
                canonical_form: canonical_form(s),
                n: s.len(),
                special: true,
                witness_element: Some(witness),
            })
        })
        .collect();
    records.sort_by(|a, b| a.canonical_form.cmp(&b.canonical_form));
    records
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn tiny_counts() {
        assert_eq!(level_counts(6, 1), vec![1, 1, 2, 5, 15, 53]);
    }

    #[test]
    fn seven_element_count() {
        assert_eq!(enumerate_meet_semilattices(7).len(), 222);
    }

    #[test]
    fn all_generated_are_semilattices_and_distinct() {
        let structures = enumerate_meet_semilattices(6);
        let mut seen = BTreeSet::new();
        for s in &structures {
            assert!(s.is_meet_semilattice());
            assert!(seen.insert(canonical_form(s)), "duplicate isomorphism class");
        }
    }

    #[test]
    fn thread_count_does_not_change_output() {
        let a = enumerate_with_threads(6, 1);
        let b = enumerate_with_threads(6, 3);
        let fa: Vec<_> = a.iter().map(canonical_form).collect();
        let fb: Vec<_> = b.iter().map(canonical_form).collect();
        assert_eq!(fa, fb);
    }

    #[test]
    fn no_special_structures_below_seven() {
        for n in 1..=6 {
            let all = enumerate_meet_semilattices(n);
            assert!(filter_special(&all).is_empty(), "n = {n}");
        }
    }

    #[test]
    fn special_filter_is_order_invariant() {
        let mut structures = enumerate_meet_semilattices(8);
        let forward: Vec<_> = filter_special(&structures)
            .into_iter()
            .map(|r| r.canonical_form)
            .collect();
        structures.reverse();
        let backward: Vec<_> = filter_special(&structures)
            .into_iter()
            .map(|r| r.canonical_form)
            .collect();
        assert_eq!(forward, backward);
        assert!(!forward.is_empty(), "the cube is special at n = 8");
    }
}

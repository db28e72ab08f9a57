//! Canonical forms for structures, used to count and deduplicate up to
//! isomorphism.
//!
//! The canonical form of a structure is the lexicographically smallest
//! encoding of (invariant color, strict-down-set row) per position, taken
//! over all relabelings that keep the index order a linear extension. Colors
//! come from an iterated degree/height refinement, so most backtracking
//! branches die immediately; a twin rule skips interchangeable elements.

use crate::poset::{ElemSet, Structure};

/// Relabeling-invariant key; equal keys mean order-isomorphic structures.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    /// Compact hex rendering, handy as a stable identifier in reports.
    pub fn hex(&self) -> String {
        let mut s = String::with_capacity(self.0.len() * 2);
        for b in &self.0 {
            s.push_str(&format!("{b:02x}"));
        }
        s
    }
}

/// Iterated refinement: start from (height, in-degree, out-degree, down-set
/// size, up-set size) and refine by the color multisets of lower and upper
/// covers until stable. Returns normalized color ids.
fn refine_colors(s: &Structure) -> Vec<u32> {
    let n = s.len();
    let mut height = vec![0usize; n];
    for i in 0..n {
        let h = s
            .covers_below(i)
            .iter()
            .map(|j| height[j] + 1)
            .max()
            .unwrap_or(0);
        height[i] = h;
    }
    let mut keys: Vec<Vec<u32>> = (0..n)
        .map(|i| {
            vec![
                height[i] as u32,
                s.covers_below(i).len() as u32,
                s.covers_above(i).len() as u32,
                s.down_set(i).len() as u32,
                s.up_set(i).len() as u32,
            ]
        })
        .collect();
    let mut colors = normalize(&keys);
    loop {
        for i in 0..n {
            let mut lo: Vec<u32> = s.covers_below(i).iter().map(|j| colors[j]).collect();
            let mut hi: Vec<u32> = s.covers_above(i).iter().map(|j| colors[j]).collect();
            lo.sort_unstable();
            hi.sort_unstable();
            let mut key = vec![colors[i]];
            key.push(u32::MAX); // separator
            key.extend(lo);
            key.push(u32::MAX);
            key.extend(hi);
            keys[i] = key;
        }
        let next = normalize(&keys);
        if next == colors {
            return colors;
        }
        colors = next;
    }
}

fn normalize(keys: &[Vec<u32>]) -> Vec<u32> {
    let mut sorted: Vec<&Vec<u32>> = keys.iter().collect();
    sorted.sort();
    sorted.dedup();
    keys.iter()
        .map(|k| sorted.binary_search(&k).unwrap() as u32)
        .collect()
}

struct Search {
    colors: Vec<u32>,
    n: usize,
    /// strict down-sets, precomputed
    strict_down: Vec<ElemSet>,
    strict_up: Vec<ElemSet>,
    best: Option<Vec<u8>>,
    best_perm: Vec<usize>,
    prefix: Vec<u8>,
    perm: Vec<usize>,
    /// position of already-placed original elements
    pos_bit: Vec<u64>,
}

const ENTRY_BYTES: usize = 9; // 1 color byte + 8 row-mask bytes

impl Search {
    fn entry(&self, x: usize) -> [u8; ENTRY_BYTES] {
        let mut row: u64 = 0;
        for j in self.strict_down[x].iter() {
            row |= self.pos_bit[j];
        }
        let mut e = [0u8; ENTRY_BYTES];
        e[0] = self.colors[x] as u8;
        e[1..].copy_from_slice(&row.to_be_bytes());
        e
    }

    fn run(&mut self, placed: ElemSet) {
        let pos = placed.len();
        if pos == self.n {
            if self.best.as_ref().is_none_or(|b| self.prefix < *b) {
                self.best = Some(self.prefix.clone());
                self.best_perm = self.perm.clone();
            }
            return;
        }
        // Compare the prefix against the incumbent: equal prefixes allow
        // per-entry pruning below, larger ones die here.
        let tight = match &self.best {
            None => false,
            Some(b) => match self.prefix.as_slice().cmp(&b[..pos * ENTRY_BYTES]) {
                std::cmp::Ordering::Greater => return,
                std::cmp::Ordering::Equal => true,
                std::cmp::Ordering::Less => false,
            },
        };
        // candidates: unplaced elements whose strict lowers are all placed
        let mut cands: Vec<(usize, [u8; ENTRY_BYTES])> = Vec::new();
        for x in 0..self.n {
            if placed.contains(x) {
                continue;
            }
            if self.strict_down[x].is_subset_of(placed) {
                cands.push((x, [0; ENTRY_BYTES]));
            }
        }
        for c in cands.iter_mut() {
            c.1 = self.entry(c.0);
        }
        cands.sort_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(&b.0)));
        // twin rule: among candidates with identical strict down- and up-sets
        // a transposition is an automorphism, so trying one suffices.
        let mut kept: Vec<(usize, [u8; ENTRY_BYTES])> = Vec::new();
        'outer: for &(x, e) in &cands {
            for &(y, _) in &kept {
                if self.strict_down[x] == self.strict_down[y]
                    && self.strict_up[x] == self.strict_up[y]
                {
                    continue 'outer;
                }
            }
            kept.push((x, e));
        }
        for (x, e) in kept {
            if tight {
                if let Some(best) = &self.best {
                    let slot = &best[pos * ENTRY_BYTES..(pos + 1) * ENTRY_BYTES];
                    if e.as_slice() > slot {
                        break; // candidates are sorted; the rest only grow
                    }
                }
            }
            self.prefix.extend_from_slice(&e);
            self.perm.push(x);
            self.pos_bit[x] = 1u64 << pos;
            let mut next = placed;
            next.insert(x);
            self.run(next);
            self.pos_bit[x] = 0;
            self.perm.pop();
            self.prefix.truncate(pos * ENTRY_BYTES);
        }
    }
}

/// Canonical form together with the relabeling permutation that realizes it
/// (`perm[new_index] = old_index`).
pub fn canonical_labeling(s: &Structure) -> (CanonicalForm, Vec<usize>) {
    let n = s.len();
    let colors = refine_colors(s);
    let strict_down: Vec<ElemSet> = (0..n)
        .map(|i| s.down_set(i).difference(ElemSet::singleton(i)))
        .collect();
    let strict_up: Vec<ElemSet> = (0..n)
        .map(|i| s.up_set(i).difference(ElemSet::singleton(i)))
        .collect();
    let mut search = Search {
        colors,
        n,
        strict_down,
        strict_up,
        best: None,
        best_perm: Vec::new(),
        prefix: Vec::with_capacity(n * ENTRY_BYTES),
        perm: Vec::with_capacity(n),
        pos_bit: vec![0; n],
    };
    search.run(ElemSet::EMPTY);
    (
        CanonicalForm(search.best.expect("at least one linear extension exists")),
        search.best_perm,
    )
}

pub fn canonical_form(s: &Structure) -> CanonicalForm {
    canonical_labeling(s).0
}

/// The canonically relabeled copy of `s`.
pub fn canonical_structure(s: &Structure) -> Structure {
    let (_, perm) = canonical_labeling(s);
    s.relabeled(&perm).expect("canonical labeling is a linear extension")
}

pub fn is_isomorphic(a: &Structure, b: &Structure) -> bool {
    if a.len() != b.len() || a.covers().len() != b.covers().len() {
        return false;
    }
    canonical_form(a) == canonical_form(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(n: usize) -> Structure {
        let covers: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Structure::new(n, &covers).unwrap()
    }

    #[test]
    fn permuted_cube_is_isomorphic() {
        let c = crate::construct::cube_structure();
        // swap the roles of the atoms 1 and 3 (and coatoms to match):
        // perm[new] = old with linear extension preserved
        let perm = vec![0, 3, 2, 1, 6, 5, 4, 7];
        let c2 = c.relabeled(&perm).unwrap();
        assert!(is_isomorphic(&c, &c2));
        assert_eq!(canonical_form(&c), canonical_form(&c2));
    }

    #[test]
    fn chain_vs_fork() {
        let fork = Structure::new(3, &[(0, 1), (0, 2)]).unwrap();
        assert!(!is_isomorphic(&chain(3), &fork));
    }

    #[test]
    fn canonical_structure_is_fixed_point() {
        let c = crate::construct::cube_structure();
        let canon = canonical_structure(&c);
        assert_eq!(canonical_form(&canon), canonical_form(&c));
        assert_eq!(canonical_structure(&canon).covers(), canon.covers());
    }

    #[test]
    fn wide_antichain_of_atoms_is_fast() {
        // bottom plus 9 atoms: heavy automorphism group; the twin rule keeps
        // this cheap.
        let covers: Vec<_> = (1..10).map(|i| (0, i)).collect();
        let s = Structure::new(10, &covers).unwrap();
        let start = std::time::Instant::now();
        let _ = canonical_form(&s);
        assert!(start.elapsed().as_millis() < 500);
    }
}

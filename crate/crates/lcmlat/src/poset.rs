//! Finite meet semilattices given by cover relations.
//!
//! Elements are indices `0..n` in a linear extension of the order: a cover
//! pair `(a, b)` ("`b` covers `a`") always has `a < b`. The full order
//! relation is kept as one down-set bitmask per element, so order queries,
//! meets, closures and width checks are word operations.

use std::fmt;

/// Hard cap on element count, from the `u64` bitmask representation.
pub const MAX_ELEMENTS: usize = 64;

/// A set of element indices, stored as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct ElemSet(pub u64);

impl ElemSet {
    pub const EMPTY: ElemSet = ElemSet(0);

    pub fn singleton(i: usize) -> Self {
        ElemSet(1u64 << i)
    }

    pub fn full(n: usize) -> Self {
        if n == 64 {
            ElemSet(!0)
        } else {
            ElemSet((1u64 << n) - 1)
        }
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }

    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1 << i);
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset_of(self, other: ElemSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: ElemSet) -> ElemSet {
        ElemSet(self.0 | other.0)
    }

    pub fn intersect(self, other: ElemSet) -> ElemSet {
        ElemSet(self.0 & other.0)
    }

    pub fn difference(self, other: ElemSet) -> ElemSet {
        ElemSet(self.0 & !other.0)
    }

    /// Largest index in the set, if nonempty.
    pub fn max(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(63 - self.0.leading_zeros() as usize)
        }
    }

    pub fn min(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i)
            }
        })
    }
}

impl FromIterator<usize> for ElemSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        let mut s = ElemSet::EMPTY;
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StructureError {
    #[error("structure must have at least one element")]
    Empty,
    #[error("structure has {0} elements, more than the supported maximum {MAX_ELEMENTS}")]
    TooLarge(usize),
    #[error("cover pair ({0}, {1}) out of range for {2} elements")]
    IndexOutOfRange(usize, usize, usize),
    #[error("cover pair ({0}, {1}) violates the index order (need lower < upper)")]
    BadIndexOrder(usize, usize),
    #[error("duplicate cover pair ({0}, {1})")]
    DuplicateCover(usize, usize),
    #[error("cover pair ({0}, {1}) is implied by other covers (relation not transitively reduced)")]
    NotReduced(usize, usize),
    #[error("elements {0} and {1} have no greatest lower bound; not a meet semilattice")]
    NotMeetSemilattice(usize, usize),
    #[error("operation requires a meet semilattice")]
    RequiresSemilattice,
}

/// A finite poset on `0..n` given by its cover relation, with indices in a
/// linear extension. Most callers want a meet semilattice; [`Structure::new`]
/// enforces that, [`Structure::new_poset`] admits arbitrary (reduced) posets
/// for I/O and rendering purposes.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Structure {
    n: usize,
    covers: Vec<(usize, usize)>,
    down: Vec<ElemSet>,
    up: Vec<ElemSet>,
    lower_covers: Vec<ElemSet>,
    upper_covers: Vec<ElemSet>,
    semilattice: bool,
}

impl fmt::Debug for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Structure(n={}, covers={:?})", self.n, self.covers)
    }
}

impl Structure {
    /// Builds and validates a meet semilattice.
    pub fn new(n: usize, covers: &[(usize, usize)]) -> Result<Self, StructureError> {
        let s = Self::build(n, covers)?;
        if !s.semilattice {
            let (a, b) = s.first_meetless_pair().expect("flag says some pair fails");
            return Err(StructureError::NotMeetSemilattice(a, b));
        }
        Ok(s)
    }

    /// Builds a poset without the meet-semilattice requirement. Cover pairs
    /// must still be in range, index-ordered, duplicate-free and reduced.
    pub fn new_poset(n: usize, covers: &[(usize, usize)]) -> Result<Self, StructureError> {
        Self::build(n, covers)
    }

    fn build(n: usize, covers: &[(usize, usize)]) -> Result<Self, StructureError> {
        if n == 0 {
            return Err(StructureError::Empty);
        }
        if n > MAX_ELEMENTS {
            return Err(StructureError::TooLarge(n));
        }
        let mut sorted: Vec<(usize, usize)> = covers.to_vec();
        sorted.sort_unstable();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return Err(StructureError::DuplicateCover(w[0].0, w[0].1));
            }
        }
        let mut lower_covers = vec![ElemSet::EMPTY; n];
        let mut upper_covers = vec![ElemSet::EMPTY; n];
        for &(a, b) in &sorted {
            if a >= n || b >= n {
                return Err(StructureError::IndexOutOfRange(a, b, n));
            }
            if a >= b {
                return Err(StructureError::BadIndexOrder(a, b));
            }
            lower_covers[b].insert(a);
            upper_covers[a].insert(b);
        }
        // Index order is a linear extension, so one ascending pass closes the
        // relation transitively.
        let mut down = vec![ElemSet::EMPTY; n];
        for i in 0..n {
            let mut d = ElemSet::singleton(i);
            for a in lower_covers[i].iter() {
                d = d.union(down[a]);
            }
            down[i] = d;
        }
        // Reducedness: a cover (a, b) must not be implied by (c, b) with a < c.
        for &(a, b) in &sorted {
            for c in lower_covers[b].iter() {
                if c != a && down[c].contains(a) {
                    return Err(StructureError::NotReduced(a, b));
                }
            }
        }
        let mut up = vec![ElemSet::EMPTY; n];
        for i in 0..n {
            for j in down[i].iter() {
                up[j].insert(i);
            }
        }
        let mut s = Structure {
            n,
            covers: sorted,
            down,
            up,
            lower_covers,
            upper_covers,
            semilattice: false,
        };
        s.semilattice = s.first_meetless_pair().is_none();
        Ok(s)
    }

    fn first_meetless_pair(&self) -> Option<(usize, usize)> {
        for i in 0..self.n {
            for j in 0..i {
                let common = self.down[i].intersect(self.down[j]);
                match common.max() {
                    None => return Some((j, i)),
                    Some(top) => {
                        if !common.is_subset_of(self.down[top]) {
                            return Some((j, i));
                        }
                    }
                }
            }
        }
        None
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Cover pairs `(lower, upper)` in sorted order.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn is_meet_semilattice(&self) -> bool {
        self.semilattice
    }

    /// `a ⪯ b` in the order.
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.down[b].contains(a)
    }

    /// Down-set of `i`, including `i` itself.
    pub fn down_set(&self, i: usize) -> ElemSet {
        self.down[i]
    }

    /// Up-set of `i`, including `i` itself.
    pub fn up_set(&self, i: usize) -> ElemSet {
        self.up[i]
    }

    /// Elements covered by `x` (the maximal elements strictly below `x`).
    pub fn covers_below(&self, x: usize) -> ElemSet {
        self.lower_covers[x]
    }

    pub fn covers_above(&self, x: usize) -> ElemSet {
        self.upper_covers[x]
    }

    pub fn maximal_elements(&self) -> ElemSet {
        (0..self.n).filter(|&i| self.upper_covers[i].is_empty()).collect()
    }

    /// The unique minimum. Meaningful only for meet semilattices, where the
    /// meet of everything exists and sits at index 0 of any linear extension.
    pub fn bottom(&self) -> usize {
        debug_assert!(self.semilattice);
        0
    }

    /// Greatest lower bound of `a` and `b`.
    ///
    /// Requires the structure to be a meet semilattice.
    pub fn meet(&self, a: usize, b: usize) -> usize {
        assert!(self.semilattice, "meet on a non-semilattice poset");
        let common = self.down[a].intersect(self.down[b]);
        let top = common.max().expect("semilattice pairs share a lower bound");
        debug_assert!(common.is_subset_of(self.down[top]));
        top
    }

    /// Smallest superset of `subset` closed under pairwise meets. The empty
    /// set is (vacuously) closed and returned unchanged.
    pub fn meet_closure(&self, subset: ElemSet) -> ElemSet {
        assert!(self.semilattice, "meet_closure on a non-semilattice poset");
        let mut closed = subset;
        loop {
            let mut next = closed;
            let members: Vec<usize> = closed.iter().collect();
            for (idx, &a) in members.iter().enumerate() {
                for &b in &members[idx + 1..] {
                    next.insert(self.meet(a, b));
                }
            }
            if next == closed {
                return closed;
            }
            closed = next;
        }
    }

    /// Size of a maximum antichain of the induced subposet on `subset`.
    /// Exhaustive search; fine for the small sets this crate works with.
    pub fn width(&self, subset: ElemSet) -> usize {
        // comparable[i]: elements of `subset` comparable to i (including i).
        let mut best = 0;
        self.width_rec(subset, ElemSet::EMPTY, &mut best);
        best
    }

    fn width_rec(&self, candidates: ElemSet, chosen: ElemSet, best: &mut usize) {
        if chosen.len() + candidates.len() <= *best {
            return;
        }
        match candidates.min() {
            None => {
                *best = (*best).max(chosen.len());
            }
            Some(x) => {
                let rest = ElemSet(candidates.0 & !(1u64 << x));
                // take x: drop everything comparable to x
                let comparable = self.down[x].union(self.up[x]);
                let mut with_x = chosen;
                with_x.insert(x);
                self.width_rec(rest.difference(comparable), with_x, best);
                // skip x
                self.width_rec(rest, chosen, best);
            }
        }
    }

    /// True iff `meetcl(C(x)) \ C(x)` is a union of two disjoint chains,
    /// tested as width ≤ 2 of that residual subposet.
    pub fn generates_double_chain(&self, x: usize) -> bool {
        let c = self.covers_below(x);
        let residual = self.meet_closure(c).difference(c);
        self.width(residual) <= 2
    }

    /// Möbius function of the order, as a full table.
    pub fn moebius(&self) -> MoebiusTable {
        let n = self.n;
        let mut values = vec![0i64; n * n];
        for i in 0..n {
            values[i * n + i] = 1;
            // Walk j strictly below i in descending index order; everything in
            // the open interval (j, i] is already filled.
            let below: Vec<usize> = self.down[i].iter().collect();
            for &j in below.iter().rev() {
                if j == i {
                    continue;
                }
                let mut acc: i64 = 0;
                for k in self.up[j].intersect(self.down[i]).iter() {
                    if k != j {
                        acc += values[i * n + k];
                    }
                }
                values[i * n + j] = -acc;
            }
        }
        MoebiusTable { n, values }
    }

    /// The subposet induced on `subset`, with elements renumbered in
    /// ascending index order (which stays a linear extension). Returns the
    /// structure and the map from new indices to original ones.
    pub fn induced(&self, subset: ElemSet) -> (Structure, Vec<usize>) {
        let elems: Vec<usize> = subset.iter().collect();
        let mut rank = vec![usize::MAX; self.n];
        for (new, &old) in elems.iter().enumerate() {
            rank[old] = new;
        }
        let m = elems.len();
        let mut covers = Vec::new();
        for (bi, &b) in elems.iter().enumerate() {
            // strict lower elements of b inside the subset
            let lowers = self.down[b].intersect(subset).difference(ElemSet::singleton(b));
            // maximal among them (in the induced order)
            for a in lowers.iter() {
                let implied = lowers.intersect(self.up[a]).difference(ElemSet::singleton(a));
                if implied.is_empty() {
                    covers.push((rank[a], bi));
                }
            }
        }
        let s = Structure::new_poset(m, &covers).expect("induced subposet is well formed");
        (s, elems)
    }

    /// Applies a relabeling: `perm[new] = old`. The permutation must keep the
    /// index order a linear extension.
    pub fn relabeled(&self, perm: &[usize]) -> Result<Structure, StructureError> {
        assert_eq!(perm.len(), self.n);
        let mut inv = vec![0usize; self.n];
        for (new, &old) in perm.iter().enumerate() {
            inv[old] = new;
        }
        let covers: Vec<(usize, usize)> =
            self.covers.iter().map(|&(a, b)| (inv[a], inv[b])).collect();
        Self::build(self.n, &covers)
    }
}

/// Möbius function values `μ(j, i)` for all comparable pairs `j ⪯ i`;
/// zero for incomparable pairs.
#[derive(Clone, PartialEq, Eq)]
pub struct MoebiusTable {
    n: usize,
    values: Vec<i64>,
}

impl MoebiusTable {
    pub fn mu(&self, j: usize, i: usize) -> i64 {
        self.values[i * self.n + j]
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Row of values `μ(·, i)`.
    pub fn row(&self, i: usize) -> &[i64] {
        &self.values[i * self.n..(i + 1) * self.n]
    }
}

/// Checks whether a cover relation on `0..n` describes a meet semilattice.
/// Malformed input (bad indices, unsorted pairs, duplicate or redundant
/// covers) is reported as an error rather than `false`.
pub fn is_meet_semilattice(n: usize, covers: &[(usize, usize)]) -> Result<bool, StructureError> {
    Ok(Structure::new_poset(n, covers)?.is_meet_semilattice())
}

use lcmlat::poset::{ElemSet, Structure};
use std::collections::BTreeSet;

// exhaustive minimal relation string over ALL linear extensions, no pruning
fn slow_canon(s: &Structure) -> Vec<u64> {
    fn rec(
        s: &Structure,
        placed: &mut Vec<usize>,
        used: ElemSet,
        best: &mut Option<Vec<u64>>,
    ) {
        let n = s.len();
        if placed.len() == n {
            let mut rows = Vec::with_capacity(n);
            for (i, &x) in placed.iter().enumerate() {
                let mut row = 0u64;
                for (j, &y) in placed.iter().enumerate().take(i) {
                    if s.leq(y, x) {
                        row |= 1 << j;
                    }
                }
                rows.push(row);
            }
            if best.as_ref().is_none_or(|b| rows < *b) {
                *best = Some(rows);
            }
            return;
        }
        for x in 0..n {
            if used.contains(x) {
                continue;
            }
            let strict_down = s.down_set(x).difference(ElemSet::singleton(x));
            if strict_down.is_subset_of(used) {
                placed.push(x);
                rec(s, placed, used.union(ElemSet::singleton(x)), best);
                placed.pop();
            }
        }
    }
    let mut best = None;
    rec(s, &mut Vec::new(), ElemSet::EMPTY, &mut best);
    best.unwrap()
}

fn main() {
    let ten = lcmlat::enumerate::enumerate_with_threads(10, 1);
    let special: Vec<&Structure> = ten
        .iter()
        .filter(|s| (0..s.len()).any(|x| !s.generates_double_chain(x)))
        .collect();
    println!("special: {}", special.len());
    let mut forms = BTreeSet::new();
    for s in &special {
        forms.insert(slow_canon(s));
    }
    println!("distinct by slow exhaustive canonicalizer: {}", forms.len());
    // same exercise at n=9 for the 13
    let nine = lcmlat::enumerate::enumerate_with_threads(9, 1);
    let s9: Vec<&Structure> = nine
        .iter()
        .filter(|s| (0..s.len()).any(|x| !s.generates_double_chain(x)))
        .collect();
    let f9: BTreeSet<Vec<u64>> = s9.iter().map(|s| slow_canon(s)).collect();
    println!("n=9 special distinct: {} of {}", f9.len(), s9.len());
}

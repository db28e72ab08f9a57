//! Seeded random generators for property sweeps: GCD-closed integer sets,
//! abstract meet semilattices, and integer realizations of a given structure.

use num_bigint::BigInt;
use num_traits::One;
use rand::prelude::IndexedRandom;
use rand::{Rng, RngExt};

use crate::gcdset::{gcd_closure, GcdSet};
use crate::poset::{ElemSet, Structure};

const SMALL_PRIMES: [u64; 15] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];

/// A random GCD-closed set built from `prime_count` primes with bounded
/// exponents, closed under gcd and rejected until it fits `max_size`.
pub fn random_gcd_set<R: Rng + RngExt>(rng: &mut R, prime_count: usize, max_size: usize) -> GcdSet {
    assert!((1..=4).contains(&prime_count));
    assert!(max_size >= 2);
    loop {
        let primes: Vec<u64> = SMALL_PRIMES
            .sample(rng, prime_count)
            .copied()
            .collect();
        let base_count = rng.random_range(2..=5usize);
        let mut values: Vec<BigInt> = Vec::with_capacity(base_count);
        for _ in 0..base_count {
            let mut v = BigInt::one();
            for &p in &primes {
                let e = rng.random_range(0..=3u32);
                v *= BigInt::from(p).pow(e);
            }
            values.push(v);
        }
        let closed = gcd_closure(values).expect("positive integers close fine");
        if closed.len() <= max_size {
            return closed;
        }
    }
}

/// A random GCD-closed set whose elements all have at most two distinct
/// prime divisors.
pub fn random_two_prime_set<R: Rng + RngExt>(rng: &mut R, max_size: usize) -> GcdSet {
    random_gcd_set(rng, 2, max_size)
}

/// A uniform-ish random meet semilattice with `n` elements, grown by adding
/// maximal elements over random admissible down-sets.
pub fn random_meet_semilattice<R: Rng + RngExt>(rng: &mut R, n: usize) -> Structure {
    assert!((1..=16).contains(&n));
    let mut s = Structure::new(1, &[]).expect("singleton");
    while s.len() < n {
        let m = s.len();
        let mut candidates: Vec<ElemSet> = Vec::new();
        'subsets: for bits in 1..(1u64 << m) {
            let d = ElemSet(bits);
            for i in d.iter() {
                if !s.down_set(i).is_subset_of(d) {
                    continue 'subsets;
                }
            }
            for y in 0..m {
                let t = d.intersect(s.down_set(y));
                let top = t.max().expect("nonempty");
                if !t.is_subset_of(s.down_set(top)) {
                    continue 'subsets;
                }
            }
            candidates.push(d);
        }
        let d = *candidates.choose(rng).expect("the full set always extends");
        let mut covers: Vec<(usize, usize)> = s.covers().to_vec();
        for a in d.iter() {
            if s.up_set(a).intersect(d).difference(ElemSet::singleton(a)).is_empty() {
                covers.push((a, m));
            }
        }
        s = Structure::new(m + 1, &covers).expect("extension stays a semilattice");
    }
    s
}

/// A GCD-closed integer realization of an abstract meet semilattice: the
/// bottom becomes 1 and every other element carries a distinct prime power,
/// so each value is the product over its strict down-set. Non-top values are
/// kept at or below `value_cap`.
pub fn random_realization<R: Rng + RngExt>(rng: &mut R, s: &Structure, value_cap: u64) -> GcdSet {
    assert!(s.is_meet_semilattice());
    let n = s.len();
    assert!(n >= 1 && n - 1 <= SMALL_PRIMES.len());
    let cap = BigInt::from(value_cap);
    'attempt: for attempt in 0..200 {
        let primes: Vec<u64> = SMALL_PRIMES
            .sample(rng, n.saturating_sub(1))
            .copied()
            .collect();
        let factors: Vec<BigInt> = (1..n)
            .map(|i| {
                let e = if attempt > 100 { 1 } else { rng.random_range(1..=2u32) };
                BigInt::from(primes[i - 1]).pow(e)
            })
            .collect();
        let mut values: Vec<BigInt> = Vec::with_capacity(n);
        for i in 0..n {
            let mut v = BigInt::one();
            for j in s.down_set(i).iter() {
                if j > 0 {
                    v *= &factors[j - 1];
                }
            }
            if i + 1 < n && v > cap {
                continue 'attempt;
            }
            values.push(v);
        }
        let set = GcdSet::new(values).expect("down-set products are GCD closed");
        debug_assert!(crate::canon::is_isomorphic(set.structure(), s));
        return set;
    }
    // deterministic fallback: smallest primes, all exponents 1, assigned so
    // that elements with large down-sets get small primes
    let mut order: Vec<usize> = (1..n).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(s.down_set(i).len()));
    let mut factor = vec![BigInt::one(); n];
    for (rank, &i) in order.iter().enumerate() {
        factor[i] = BigInt::from(SMALL_PRIMES[rank]);
    }
    let values: Vec<BigInt> = (0..n)
        .map(|i| {
            let mut v = BigInt::one();
            for j in s.down_set(i).iter() {
                if j > 0 {
                    v *= &factor[j];
                }
            }
            v
        })
        .collect();
    GcdSet::new(values).expect("down-set products are GCD closed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_sets_are_valid_and_bounded() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let s = random_gcd_set(&mut rng, 3, 12);
            assert!(s.len() <= 12);
        }
    }

    #[test]
    fn two_prime_sets_satisfy_sun_condition() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..30 {
            let s = random_two_prime_set(&mut rng, 10);
            assert!(s
                .check_sun_condition(crate::gcdset::DEFAULT_FACTOR_BUDGET)
                .unwrap());
        }
    }

    #[test]
    fn random_semilattices_have_requested_size() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 1..=8 {
            let s = random_meet_semilattice(&mut rng, n);
            assert_eq!(s.len(), n);
            assert!(s.is_meet_semilattice());
        }
    }

    #[test]
    fn realizations_reproduce_the_structure() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let s = random_meet_semilattice(&mut rng, 7);
            let set = random_realization(&mut rng, &s, 1_000_000);
            assert!(crate::canon::is_isomorphic(set.structure(), &s));
            assert_eq!(set.element(0), &BigInt::one());
        }
    }

    #[test]
    fn generators_are_deterministic_per_seed() {
        let a = random_gcd_set(&mut ChaCha8Rng::seed_from_u64(42), 3, 12);
        let b = random_gcd_set(&mut ChaCha8Rng::seed_from_u64(42), 3, 12);
        assert_eq!(a.elements(), b.elements());
    }
}

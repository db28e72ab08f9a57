//! A small catalog of noteworthy GCD-closed sets used across tests, the
//! self-check suite and the documentation: the classic singular examples and
//! the larger sets probing cube subsemilattice behavior.

use num_bigint::BigInt;

use crate::gcdset::{build_gcd_set, GcdSet};

fn set_of(name: &str, values: &[u64]) -> GcdSet {
    build_gcd_set(values.iter().map(|&v| BigInt::from(v)))
        .expect("catalog sets are GCD closed")
        .with_name(name)
}

/// The classic four-element singular example {1, 2, 15, 42}. Its LCM matrix
/// has determinant zero, but the set is not GCD closed (gcd(15, 42) = 3 is
/// missing), so it only exists here as a raw value list.
pub fn non_closed_singular_4_values() -> Vec<BigInt> {
    [1u64, 2, 15, 42].iter().map(|&v| BigInt::from(v)).collect()
}

/// The GCD closure {1, 2, 3, 15, 42} of the four-element example. Closing
/// the set restores invertibility, as it must for closed sets this small.
pub fn closure_of_four() -> GcdSet {
    set_of("closure-of-four", &[1, 2, 3, 15, 42])
}

/// The 8-element cube-shaped set {1, 2, 3, 5, 66, 70, 255, 39270} whose LCM
/// matrix is singular; the seed for all 9-element insertion constructions.
pub fn singular_cube_8() -> GcdSet {
    set_of("singular-cube-8", &[1, 2, 3, 5, 66, 70, 255, 39270])
}

/// The 9-element singular set {1, 2, 3, 4, 5, 6, 10, 45, 180} of class 9_I.
pub fn nine_i_example() -> GcdSet {
    set_of("9I-example", &[1, 2, 3, 4, 5, 6, 10, 45, 180])
}

/// A singular realization of class 9_J: {1, 5, 11, 17, 19, 748, 1463, 2907,
/// 4476780}. A variant with 255 in place of 5 is sometimes quoted for this
/// class, but it is not even GCD closed (gcd(255, 2907) = 51 is missing), so
/// this labeling is the realizable one; see the companion test below.
pub fn nine_j_example() -> GcdSet {
    set_of("9J-example", &[1, 5, 11, 17, 19, 748, 1463, 2907, 4476780])
}

/// The rejected 9_J variant, kept for the record: {1, 11, 17, 19, 255, 748,
/// 1463, 2907, 4476780} fails GCD closure.
pub fn nine_j_variant_values() -> Vec<BigInt> {
    [1u64, 11, 17, 19, 255, 748, 1463, 2907, 4476780]
        .iter()
        .map(|&v| BigInt::from(v))
        .collect()
}

/// A 13-element singular set without any cube subsemilattice.
pub fn singular_13() -> GcdSet {
    set_of(
        "singular-13",
        &[1, 2, 3, 13, 23, 25, 41, 75, 369, 533, 6877, 16675, 3679538850],
    )
}

/// A 14-element singular set with two cube subsemilattices sharing their top
/// and bottom.
pub fn singular_14() -> GcdSet {
    set_of(
        "singular-14",
        &[1, 2, 3, 6, 7, 11, 13, 19, 56, 147, 209, 1859, 196859, 33105384312],
    )
}

/// A 16-element singular set with two disjoint cube subsemilattices.
pub fn singular_16() -> GcdSet {
    set_of(
        "singular-16",
        &[
            1, 2, 3, 5, 7, 14, 20, 35, 54, 231, 255, 1820, 45738, 137445, 39308760,
            3029801294520,
        ],
    )
}

/// All catalog sets with at most 9 elements, for determinant cross-checks.
pub fn small_sets() -> Vec<GcdSet> {
    vec![
        closure_of_four(),
        singular_cube_8(),
        nine_i_example(),
        nine_j_example(),
    ]
}

/// Every singular catalog set.
pub fn singular_sets() -> Vec<GcdSet> {
    vec![
        singular_cube_8(),
        nine_i_example(),
        nine_j_example(),
        singular_13(),
        singular_14(),
        singular_16(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gcdset::SetError;
    use num_traits::Zero;

    #[test]
    fn catalog_sets_are_singular() {
        for s in singular_sets() {
            let (singular, witnesses) = s.is_singular();
            assert!(singular, "{:?}", s.name());
            assert!(witnesses.contains(&s.top_index()), "{:?}", s.name());
        }
    }

    #[test]
    fn non_closed_four_set_is_rejected_but_its_matrix_is_singular() {
        let values = non_closed_singular_4_values();
        let err = crate::gcdset::build_gcd_set(values.clone()).unwrap_err();
        assert_eq!(
            err,
            SetError::NotGcdClosed {
                a: BigInt::from(15),
                b: BigInt::from(42),
                gcd: BigInt::from(3),
            }
        );
        let m = crate::matrix::lcm_matrix_of_values(&values, 1);
        assert!(crate::matrix::det_bareiss(&m).is_zero());
        // the closure regains invertibility
        assert!(!closure_of_four().is_singular().0);
    }

    #[test]
    fn nine_j_variant_is_not_gcd_closed() {
        let err = crate::gcdset::build_gcd_set(nine_j_variant_values()).unwrap_err();
        match err {
            SetError::NotGcdClosed { gcd, .. } => assert_eq!(gcd, BigInt::from(51)),
            other => panic!("expected a closure failure, got {other:?}"),
        }
    }

    #[test]
    fn nine_j_top_psi_vanishes() {
        let s = nine_j_example();
        assert!(s.psi(1).top().is_zero());
    }
}

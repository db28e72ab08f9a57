//! Nine-element constructions and structure classification.
//!
//! All thirteen special nine-element semilattice shapes are embedded as cover
//! lists; [`classify9`] matches a set against them up to isomorphism. The
//! insertion constructions turn a singular eight-element seed into singular
//! nine-element sets of classes 9_A through 9_H, and the sign checks make the
//! impossibility of 9_K and the forced nonsingularity of 9_L/9_M executable.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::canon::{canonical_form, CanonicalForm};
use crate::gcdset::{build_gcd_set, GcdSet, Rational, SetError};
use crate::poset::{ElemSet, Structure};

/// The thirteen labeled nine-element classes, plus a catch-all.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClassLabel {
    NineA,
    NineB,
    NineC,
    NineD,
    NineE,
    NineF,
    NineG,
    NineH,
    NineI,
    NineJ,
    NineK,
    NineL,
    NineM,
    Other,
}

impl std::fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        use ClassLabel::*;
        let s = match self {
            NineA => "9_A",
            NineB => "9_B",
            NineC => "9_C",
            NineD => "9_D",
            NineE => "9_E",
            NineF => "9_F",
            NineG => "9_G",
            NineH => "9_H",
            NineI => "9_I",
            NineJ => "9_J",
            NineK => "9_K",
            NineL => "9_L",
            NineM => "9_M",
            Other => "OTHER",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for ClassLabel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        use ClassLabel::*;
        match s.to_ascii_uppercase().as_str() {
            "9_A" | "A" => Ok(NineA),
            "9_B" | "B" => Ok(NineB),
            "9_C" | "C" => Ok(NineC),
            "9_D" | "D" => Ok(NineD),
            "9_E" | "E" => Ok(NineE),
            "9_F" | "F" => Ok(NineF),
            "9_G" | "G" => Ok(NineG),
            "9_H" | "H" => Ok(NineH),
            "9_I" | "I" => Ok(NineI),
            "9_J" | "J" => Ok(NineJ),
            "9_K" | "K" => Ok(NineK),
            "9_L" | "L" => Ok(NineL),
            "9_M" | "M" => Ok(NineM),
            "OTHER" => Ok(Other),
            other => Err(format!("unknown class label {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConstructError {
    #[error("expected a set with {expected} elements, got {got}")]
    WrongSize { expected: usize, got: usize },
    #[error("seed set must be singular with Ψ = 0 at its top element")]
    SeedNotSingularAtTop,
    #[error("seed set must have the eight-element cube structure")]
    SeedNotCube,
    #[error("multiplier {0} is not coprime to element {1}")]
    NotCoprime(BigInt, BigInt),
    #[error("multiplier must be at least 2, got {0}")]
    MultiplierTooSmall(BigInt),
    #[error("no coatom admits a valid multiplier for the insertion")]
    NoViableCoatom,
    #[error("set does not match the required structure class {expected}, classified as {found}")]
    StructureMismatch { expected: ClassLabel, found: ClassLabel },
    #[error("bottom element must be 1 for this check")]
    BottomNotOne,
    #[error("cube search supports at most {limit} elements, got {got}")]
    SizeOverBound { limit: usize, got: usize },
    #[error(transparent)]
    Set(#[from] SetError),
}

pub const CUBE_SEARCH_LIMIT: usize = 20;

/// The Boolean cube B3: bottom, three atoms, three coatoms, top.
pub fn cube_structure() -> Structure {
    Structure::new(
        8,
        &[
            (0, 1),
            (0, 2),
            (0, 3),
            (1, 4),
            (2, 4),
            (1, 5),
            (3, 5),
            (2, 6),
            (3, 6),
            (4, 7),
            (5, 7),
            (6, 7),
        ],
    )
    .expect("the cube is a meet semilattice")
}

fn fixture_covers(label: ClassLabel) -> &'static [(usize, usize)] {
    use ClassLabel::*;
    match label {
        // cube plus a second atom pendant on the bottom
        NineA => &[
            (0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (1, 5), (3, 5), (2, 6), (3, 6),
            (4, 7), (5, 7), (6, 7), (0, 8),
        ],
        // cube plus a pendant above one atom
        NineB => &[
            (0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (1, 5), (3, 5), (2, 6), (3, 6),
            (4, 7), (5, 7), (6, 7), (1, 8),
        ],
        // cube plus a pendant above one coatom
        NineC => &[
            (0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (1, 5), (3, 5), (2, 6), (3, 6),
            (4, 7), (5, 7), (6, 7), (4, 8),
        ],
        // cube plus a pendant above the top
        NineD => &[
            (0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (1, 5), (3, 5), (2, 6), (3, 6),
            (4, 7), (5, 7), (6, 7), (7, 8),
        ],
        // cube plus a pendant below the bottom
        NineE => &[
            (0, 1), (1, 2), (1, 3), (1, 4), (2, 5), (3, 5), (2, 6), (4, 6), (3, 7),
            (4, 7), (5, 8), (6, 8), (7, 8),
        ],
        // cube with a fourth atom under one coatom
        NineF => &[
            (0, 1), (0, 2), (0, 3), (0, 4), (1, 5), (2, 5), (4, 5), (1, 6), (3, 6),
            (2, 7), (3, 7), (5, 8), (6, 8), (7, 8),
        ],
        // cube with one atom-to-coatom edge subdivided
        NineG => &[
            (0, 1), (0, 2), (0, 3), (1, 4), (4, 5), (2, 5), (1, 6), (3, 6), (2, 7),
            (3, 7), (5, 8), (6, 8), (7, 8),
        ],
        // cube with one coatom-to-top edge subdivided
        NineH => &[
            (0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (1, 5), (3, 5), (2, 6), (3, 6),
            (4, 7), (5, 8), (6, 8), (7, 8),
        ],
        // cube with a fourth coatom above one atom
        NineI => &[
            (0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (1, 5), (3, 5), (2, 6), (3, 6),
            (1, 7), (4, 8), (5, 8), (6, 8), (7, 8),
        ],
        // cube with a fourth coatom directly above the bottom
        NineJ => &[
            (0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (1, 5), (3, 5), (2, 6), (3, 6),
            (0, 7), (4, 8), (5, 8), (6, 8), (7, 8),
        ],
        // cube with one bottom-to-atom edge subdivided
        NineK => &[
            (0, 1), (1, 2), (0, 3), (0, 4), (2, 5), (3, 5), (2, 6), (4, 6), (3, 7),
            (4, 7), (5, 8), (6, 8), (7, 8),
        ],
        // four coatoms over three atoms, outer atoms with private coatoms
        NineL => &[
            (0, 1), (0, 2), (0, 3), (1, 4), (1, 5), (2, 5), (2, 6), (3, 6), (3, 7),
            (4, 8), (5, 8), (6, 8), (7, 8),
        ],
        // four coatoms over three atoms, one coatom above all three
        NineM => &[
            (0, 1), (0, 2), (0, 3), (1, 4), (2, 5), (1, 6), (2, 6), (3, 6), (3, 7),
            (4, 8), (5, 8), (6, 8), (7, 8),
        ],
        Other => &[],
    }
}

/// The cover-list fixture for one of the thirteen labeled classes.
pub fn fixture(label: ClassLabel) -> Structure {
    assert!(label != ClassLabel::Other, "OTHER has no fixture");
    Structure::new(9, fixture_covers(label)).expect("fixtures are meet semilattices")
}

pub fn all_labels() -> [ClassLabel; 13] {
    use ClassLabel::*;
    [
        NineA, NineB, NineC, NineD, NineE, NineF, NineG, NineH, NineI, NineJ, NineK,
        NineL, NineM,
    ]
}

fn fixture_forms() -> &'static Vec<(ClassLabel, CanonicalForm)> {
    static FORMS: OnceLock<Vec<(ClassLabel, CanonicalForm)>> = OnceLock::new();
    FORMS.get_or_init(|| {
        all_labels()
            .into_iter()
            .map(|l| (l, canonical_form(&fixture(l))))
            .collect()
    })
}

/// Classifies a nine-element structure against the thirteen fixtures.
pub fn classify_structure(s: &Structure) -> Result<ClassLabel, ConstructError> {
    if s.len() != 9 {
        return Err(ConstructError::WrongSize {
            expected: 9,
            got: s.len(),
        });
    }
    let form = canonical_form(s);
    Ok(fixture_forms()
        .iter()
        .find(|(_, f)| *f == form)
        .map(|(l, _)| *l)
        .unwrap_or(ClassLabel::Other))
}

/// Classifies a nine-element set by its divisibility structure.
pub fn classify9(set: &GcdSet) -> Result<ClassLabel, ConstructError> {
    classify_structure(set.structure())
}

/// Where the new maximal element of [`insert_maximal`] attaches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MaximalAnchor {
    /// Over the bottom element (class 9_A).
    Bottom,
    /// Over an atom (class 9_B).
    Atom,
    /// Over a coatom (class 9_C).
    Coatom,
    /// Over the top (class 9_D).
    Top,
}

/// Structural roles of the eight-element cube seed, in index order.
struct CubeRoles {
    bottom: usize,
    atoms: Vec<usize>,
    coatoms: Vec<usize>,
    top: usize,
}

fn cube_roles(set: &GcdSet) -> Result<CubeRoles, ConstructError> {
    if set.len() != 8 {
        return Err(ConstructError::WrongSize {
            expected: 8,
            got: set.len(),
        });
    }
    let s = set.structure();
    if !crate::canon::is_isomorphic(s, &cube_structure()) {
        return Err(ConstructError::SeedNotCube);
    }
    let bottom = 0;
    let top = 7;
    let atoms: Vec<usize> = s.covers_above(bottom).iter().collect();
    let coatoms: Vec<usize> = s.covers_below(top).iter().collect();
    debug_assert_eq!(atoms.len(), 3);
    debug_assert_eq!(coatoms.len(), 3);
    Ok(CubeRoles {
        bottom,
        atoms,
        coatoms,
        top,
    })
}

fn require_singular_top(set: &GcdSet) -> Result<(), ConstructError> {
    if set.psi(1).top().is_zero() {
        Ok(())
    } else {
        Err(ConstructError::SeedNotSingularAtTop)
    }
}

fn require_coprime(set: &GcdSet, a: &BigInt) -> Result<(), ConstructError> {
    for x in set.elements() {
        if !a.gcd(x).is_one() {
            return Err(ConstructError::NotCoprime(a.clone(), x.clone()));
        }
    }
    Ok(())
}

/// Adjoins `a · anchor` as a new maximal element of a singular cube seed.
/// The multiplier must be coprime to the whole seed.
pub fn insert_maximal(
    seed: &GcdSet,
    a: &BigInt,
    anchor: MaximalAnchor,
) -> Result<GcdSet, ConstructError> {
    let roles = cube_roles(seed)?;
    require_singular_top(seed)?;
    if a < &BigInt::from(2) {
        return Err(ConstructError::MultiplierTooSmall(a.clone()));
    }
    require_coprime(seed, a)?;
    let anchor_index = match anchor {
        MaximalAnchor::Bottom => roles.bottom,
        MaximalAnchor::Atom => *roles.atoms.last().expect("cube has atoms"),
        MaximalAnchor::Coatom => *roles.coatoms.last().expect("cube has coatoms"),
        MaximalAnchor::Top => roles.top,
    };
    let mut values: Vec<BigInt> = seed.elements().to_vec();
    values.push(a * seed.element(anchor_index));
    Ok(build_gcd_set(values)?)
}

/// Scales the seed by `a` and adjoins a new minimum, giving class 9_E.
/// The new minimum is `a` itself when the seed bottom exceeds 1 and 1
/// otherwise; either way the top Ψ value stays `(1/a) · Ψ(seed top) = 0`.
pub fn insert_minimum(seed: &GcdSet, a: &BigInt) -> Result<GcdSet, ConstructError> {
    if seed.len() != 8 {
        return Err(ConstructError::WrongSize {
            expected: 8,
            got: seed.len(),
        });
    }
    require_singular_top(seed)?;
    if a < &BigInt::from(2) {
        return Err(ConstructError::MultiplierTooSmall(a.clone()));
    }
    let mut values: Vec<BigInt> = seed.elements().iter().map(|x| a * x).collect();
    let new_bottom = if seed.element(0) > &BigInt::one() {
        a.clone()
    } else {
        BigInt::one()
    };
    values.push(new_bottom);
    Ok(build_gcd_set(values)?)
}

/// The three insertions between comparable elements of the cube seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BetweenVariant {
    /// New atom below the chosen coatom (class 9_F).
    F,
    /// New element between one atom and the chosen coatom (class 9_G).
    G,
    /// New element between the chosen coatom's atom pair and itself,
    /// carrying their lcm (class 9_H).
    H,
}

/// Result of [`insert_between`]: the constructed set, the multiplier that
/// made the chosen coatom work, and the coatom's index in the seed.
#[derive(Debug, Clone)]
pub struct BetweenOutcome {
    pub set: GcdSet,
    pub multiplier: BigInt,
    pub coatom_index: usize,
}

/// Inserts a new element between comparable elements of a singular cube seed
/// with bottom 1. Coatoms are tried in index order; a coatom `c` over atoms
/// `u, v` is viable when `c = a · lcm(u, v)` with `a > 1` coprime to every
/// seed element other than `c` itself and the top (which `a` divides by
/// construction).
pub fn insert_between(
    seed: &GcdSet,
    variant: BetweenVariant,
) -> Result<BetweenOutcome, ConstructError> {
    let roles = cube_roles(seed)?;
    require_singular_top(seed)?;
    if !seed.element(0).is_one() {
        return Err(ConstructError::BottomNotOne);
    }
    let s = seed.structure();
    for &c in &roles.coatoms {
        let pair: Vec<usize> = s.covers_below(c).iter().collect();
        debug_assert_eq!(pair.len(), 2);
        let l = seed.element(pair[0]).lcm(seed.element(pair[1]));
        let (a, rem) = seed.element(c).div_rem(&l);
        if !rem.is_zero() || a <= BigInt::one() {
            continue;
        }
        let coprime = seed
            .elements()
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != roles.top && *i != c)
            .all(|(_, x)| a.gcd(x).is_one());
        if !coprime {
            continue;
        }
        let new_value = match variant {
            BetweenVariant::F => a.clone(),
            BetweenVariant::G => &a * seed.element(pair[0]),
            BetweenVariant::H => l,
        };
        let mut values: Vec<BigInt> = seed.elements().to_vec();
        values.push(new_value);
        let set = build_gcd_set(values)?;
        return Ok(BetweenOutcome {
            set,
            multiplier: a,
            coatom_index: c,
        });
    }
    Err(ConstructError::NoViableCoatom)
}

/// Exact Ψ at the top of a 9_K-shaped set with bottom 1. The returned value
/// is provably negative for every such set, which is why no singular set of
/// this shape exists.
pub fn check_9k_sign(set: &GcdSet) -> Result<Rational, ConstructError> {
    let label = classify9(set)?;
    if label != ClassLabel::NineK {
        return Err(ConstructError::StructureMismatch {
            expected: ClassLabel::NineK,
            found: label,
        });
    }
    if !set.element(0).is_one() {
        return Err(ConstructError::BottomNotOne);
    }
    Ok(set.psi(1).top().clone())
}

/// Exact Ψ at the top of a 9_L- or 9_M-shaped set. The returned value is
/// provably positive, so these shapes never carry a singular matrix.
pub fn check_9lm_sign(set: &GcdSet) -> Result<Rational, ConstructError> {
    let label = classify9(set)?;
    if label != ClassLabel::NineL && label != ClassLabel::NineM {
        return Err(ConstructError::StructureMismatch {
            expected: ClassLabel::NineL,
            found: label,
        });
    }
    Ok(set.psi(1).top().clone())
}

/// An eight-element subset that is gcd-closed within itself and carries the
/// cube order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubeWitness {
    /// Ascending element indices into the searched set.
    pub indices: [usize; 8],
}

impl CubeWitness {
    pub fn values(&self, set: &GcdSet) -> Vec<BigInt> {
        self.indices.iter().map(|&i| set.element(i).clone()).collect()
    }

    pub fn index_set(&self) -> ElemSet {
        self.indices.iter().copied().collect()
    }
}

/// All cube-shaped subsemilattices of `set`, in lexicographic index order.
pub fn find_cube_subsemilattices(set: &GcdSet) -> Result<Vec<CubeWitness>, ConstructError> {
    let n = set.len();
    if n > CUBE_SEARCH_LIMIT {
        return Err(ConstructError::SizeOverBound {
            limit: CUBE_SEARCH_LIMIT,
            got: n,
        });
    }
    let mut out = Vec::new();
    if n < 8 {
        return Ok(out);
    }
    let s = set.structure();
    let cube_form = canonical_form(&cube_structure());
    let mut combo: Vec<usize> = (0..8).collect();
    loop {
        let mask: ElemSet = combo.iter().copied().collect();
        if closed_under_meet(s, mask) && downset_profile_is_cubelike(s, mask) {
            let (induced, _) = s.induced(mask);
            if canonical_form(&induced) == cube_form {
                out.push(CubeWitness {
                    indices: combo.clone().try_into().expect("eight indices"),
                });
            }
        }
        if !next_combination(&mut combo, n) {
            break;
        }
    }
    Ok(out)
}

fn closed_under_meet(s: &Structure, mask: ElemSet) -> bool {
    let members: Vec<usize> = mask.iter().collect();
    for (idx, &a) in members.iter().enumerate() {
        for &b in &members[idx + 1..] {
            if !mask.contains(s.meet(a, b)) {
                return false;
            }
        }
    }
    true
}

/// Down-set sizes within the subset must be 1,2,2,2,4,4,4,8 for a cube.
fn downset_profile_is_cubelike(s: &Structure, mask: ElemSet) -> bool {
    let mut sizes: Vec<usize> = mask
        .iter()
        .map(|i| s.down_set(i).intersect(mask).len())
        .collect();
    sizes.sort_unstable();
    sizes == [1, 2, 2, 2, 4, 4, 4, 8]
}

fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if combo[i] < n - k + i {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use num_traits::Signed;

    #[test]
    fn fixtures_are_distinct_semilattices() {
        let forms: Vec<CanonicalForm> = all_labels()
            .into_iter()
            .map(|l| {
                let f = fixture(l);
                assert!(f.is_meet_semilattice(), "{l}");
                assert_eq!(f.len(), 9, "{l}");
                canonical_form(&f)
            })
            .collect();
        for i in 0..forms.len() {
            for j in 0..i {
                assert_ne!(forms[i], forms[j], "fixtures {i} and {j} collide");
            }
        }
    }

    #[test]
    fn every_fixture_is_special() {
        for l in all_labels() {
            let f = fixture(l);
            assert!(
                (0..9).any(|x| !f.generates_double_chain(x)),
                "{l} should contain a double-chain failure"
            );
        }
    }

    #[test]
    fn classify_known_sets() {
        assert_eq!(classify9(&catalog::nine_i_example()).unwrap(), ClassLabel::NineI);
        assert_eq!(classify9(&catalog::nine_j_example()).unwrap(), ClassLabel::NineJ);
        let chain = crate::gcdset::build_gcd_set([1u64, 2, 4, 8, 16, 32, 64, 128, 256]).unwrap();
        assert_eq!(classify9(&chain).unwrap(), ClassLabel::Other);
        let err = classify9(&catalog::closure_of_four()).unwrap_err();
        assert!(matches!(err, ConstructError::WrongSize { expected: 9, got: 5 }));
    }

    #[test]
    fn insert_maximal_variants() {
        let seed = catalog::singular_cube_8();
        let a = BigInt::from(13);
        let cases = [
            (MaximalAnchor::Bottom, ClassLabel::NineA),
            (MaximalAnchor::Atom, ClassLabel::NineB),
            (MaximalAnchor::Coatom, ClassLabel::NineC),
            (MaximalAnchor::Top, ClassLabel::NineD),
        ];
        for (anchor, expected) in cases {
            let s9 = insert_maximal(&seed, &a, anchor).unwrap();
            assert_eq!(s9.len(), 9);
            assert!(s9.is_singular().0, "{expected}");
            assert_eq!(classify9(&s9).unwrap(), expected);
        }
        // 2 divides several seed elements
        let err = insert_maximal(&seed, &BigInt::from(2), MaximalAnchor::Bottom).unwrap_err();
        assert!(matches!(err, ConstructError::NotCoprime(..)));
    }

    #[test]
    fn insert_minimum_variants() {
        let seed = catalog::singular_cube_8();
        let s9 = insert_minimum(&seed, &BigInt::from(2)).unwrap();
        assert_eq!(s9.len(), 9);
        assert!(s9.psi(1).top().is_zero());
        assert_eq!(classify9(&s9).unwrap(), ClassLabel::NineE);
        assert!(matches!(
            insert_minimum(&seed, &BigInt::one()).unwrap_err(),
            ConstructError::MultiplierTooSmall(_)
        ));
        // a seed with bottom above 1 takes the multiplier itself as minimum
        let scaled_values: Vec<BigInt> = seed.elements().iter().map(|x| x * 3).collect();
        let scaled = crate::gcdset::build_gcd_set(scaled_values).unwrap();
        let s9b = insert_minimum(&scaled, &BigInt::from(5)).unwrap();
        assert_eq!(s9b.element(0), &BigInt::from(5));
        assert_eq!(classify9(&s9b).unwrap(), ClassLabel::NineE);
        assert!(s9b.psi(1).top().is_zero());
    }

    #[test]
    fn insert_between_variants() {
        let seed = catalog::singular_cube_8();
        let cases = [
            (BetweenVariant::F, ClassLabel::NineF),
            (BetweenVariant::G, ClassLabel::NineG),
            (BetweenVariant::H, ClassLabel::NineH),
        ];
        for (variant, expected) in cases {
            let out = insert_between(&seed, variant).unwrap();
            assert_eq!(out.set.len(), 9);
            assert!(out.set.is_singular().0, "{expected}");
            assert_eq!(classify9(&out.set).unwrap(), expected, "{expected}");
            assert!(out.multiplier >= BigInt::from(2));
        }
        // the first viable coatom of the standard seed is 66 = 11 * lcm(2, 3)
        let out = insert_between(&seed, BetweenVariant::F).unwrap();
        assert_eq!(out.multiplier, BigInt::from(11));
        assert_eq!(seed.element(out.coatom_index), &BigInt::from(66));
    }

    #[test]
    fn sign_checks_on_handmade_realizations() {
        // 9_K: chain 1 | 2 | 6 on the subdivided leg, atoms 5 and 7
        let k = crate::gcdset::build_gcd_set([
            1u64, 2, 6, 5, 7, 6 * 5, 6 * 7, 5 * 7, 2 * 3 * 5 * 7,
        ])
        .unwrap();
        let v = check_9k_sign(&k).unwrap();
        assert!(v.is_negative());
        // structure mismatch is reported
        assert!(matches!(
            check_9k_sign(&catalog::nine_i_example()).unwrap_err(),
            ConstructError::StructureMismatch { .. }
        ));

        // 9_L: private coatoms over the outer atoms
        let l = crate::gcdset::build_gcd_set([
            1u64, 2, 3, 5, 4, 6, 15, 25, 2 * 2 * 3 * 5 * 5,
        ])
        .unwrap();
        assert_eq!(classify9(&l).unwrap(), ClassLabel::NineL);
        assert!(check_9lm_sign(&l).unwrap().is_positive());

        // 9_M: one coatom over all three atoms
        let m = crate::gcdset::build_gcd_set([
            1u64, 2, 3, 5, 4, 9, 30, 25, 2 * 2 * 9 * 25,
        ])
        .unwrap();
        assert_eq!(classify9(&m).unwrap(), ClassLabel::NineM);
        assert!(check_9lm_sign(&m).unwrap().is_positive());
    }

    #[test]
    fn cube_search_on_catalog_sets() {
        assert!(find_cube_subsemilattices(&catalog::singular_13()).unwrap().is_empty());

        let w14 = find_cube_subsemilattices(&catalog::singular_14()).unwrap();
        assert_eq!(w14.len(), 2);
        let shared = w14[0].index_set().intersect(w14[1].index_set());
        let s14 = catalog::singular_14();
        assert_eq!(shared.len(), 2);
        assert!(shared.contains(0) && shared.contains(s14.top_index()));

        // the 16-element set is saturated with cube subsemilattices; the
        // point of the example is that a totally disjoint pair exists
        let s16 = catalog::singular_16();
        let w16 = find_cube_subsemilattices(&s16).unwrap();
        assert_eq!(w16.len(), 30);
        let values_of = |w: &CubeWitness| -> Vec<u64> {
            w.values(&s16)
                .iter()
                .map(|x| x.to_string().parse().unwrap())
                .collect()
        };
        let left: Vec<u64> = vec![1, 2, 3, 5, 20, 54, 255, 39308760];
        let right: Vec<u64> = vec![7, 14, 35, 231, 1820, 45738, 137445, 3029801294520];
        let has_left = w16.iter().any(|w| values_of(w) == left);
        let has_right = w16.iter().any(|w| values_of(w) == right);
        assert!(has_left && has_right);
        let disjoint_pairs = w16
            .iter()
            .enumerate()
            .flat_map(|(i, a)| w16[i + 1..].iter().map(move |b| (a, b)))
            .filter(|(a, b)| a.index_set().intersect(b.index_set()).is_empty())
            .count();
        assert!(disjoint_pairs >= 1);

        // the plain cube contains exactly itself
        let w8 = find_cube_subsemilattices(&catalog::singular_cube_8()).unwrap();
        assert_eq!(w8.len(), 1);
        assert_eq!(w8[0].indices, [0, 1, 2, 3, 4, 5, 6, 7]);
    }

    #[test]
    fn labels_round_trip_through_strings() {
        for l in all_labels() {
            let s = l.to_string();
            assert_eq!(s.parse::<ClassLabel>().unwrap(), l);
        }
        assert_eq!("OTHER".parse::<ClassLabel>().unwrap(), ClassLabel::Other);
        assert!("9_Z".parse::<ClassLabel>().is_err());
    }
}

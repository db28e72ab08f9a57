//! GCD-closed sets of positive integers and their exact singularity
//! certificates.
//!
//! All arithmetic here is exact: unbounded integers and normalized rationals.
//! Whether an LCM matrix is singular is an exact-zero question, so floating
//! point has no business in this module.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::poset::{Structure, MAX_ELEMENTS};

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SetError {
    #[error("set must be nonempty")]
    Empty,
    #[error("set elements must be positive, got {0}")]
    NonPositive(BigInt),
    #[error("duplicate element {0}")]
    Duplicate(BigInt),
    #[error("set is not GCD closed: gcd({a}, {b}) = {gcd} is missing")]
    NotGcdClosed { a: BigInt, b: BigInt, gcd: BigInt },
    #[error("set has {0} elements, more than the supported maximum {MAX_ELEMENTS}")]
    TooLarge(usize),
    #[error("element index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("element {0} has no lower covers")]
    NoLowerCovers(usize),
}

/// A GCD-closed set of positive integers with its induced divisibility order.
/// Elements are stored in ascending value order, which is a linear extension
/// of divisibility, so index 0 is the bottom and index `n-1` the top.
#[derive(Clone, PartialEq, Eq)]
pub struct GcdSet {
    elements: Vec<BigInt>,
    structure: Structure,
    name: Option<String>,
}

impl std::fmt::Debug for GcdSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let vals: Vec<String> = self.elements.iter().map(|x| x.to_string()).collect();
        write!(f, "GcdSet{{{}}}", vals.join(", "))
    }
}

/// Validates and builds a [`GcdSet`] from arbitrary positive integers.
pub fn build_gcd_set<I, T>(values: I) -> Result<GcdSet, SetError>
where
    I: IntoIterator<Item = T>,
    T: Into<BigInt>,
{
    GcdSet::new(values.into_iter().map(Into::into).collect())
}

/// The smallest GCD-closed superset of `values`.
pub fn gcd_closure<I, T>(values: I) -> Result<GcdSet, SetError>
where
    I: IntoIterator<Item = T>,
    T: Into<BigInt>,
{
    let mut elems: Vec<BigInt> = values.into_iter().map(Into::into).collect();
    if elems.is_empty() {
        return Err(SetError::Empty);
    }
    for x in &elems {
        if !x.is_positive() {
            return Err(SetError::NonPositive(x.clone()));
        }
    }
    elems.sort();
    elems.dedup();
    loop {
        let mut added = Vec::new();
        for i in 0..elems.len() {
            for j in 0..i {
                let g = elems[i].gcd(&elems[j]);
                if elems.binary_search(&g).is_err() && !added.contains(&g) {
                    added.push(g);
                }
            }
        }
        if added.is_empty() {
            break;
        }
        elems.extend(added);
        elems.sort();
        elems.dedup();
    }
    GcdSet::new(elems)
}

impl GcdSet {
    pub fn new(mut elements: Vec<BigInt>) -> Result<Self, SetError> {
        if elements.is_empty() {
            return Err(SetError::Empty);
        }
        if elements.len() > MAX_ELEMENTS {
            return Err(SetError::TooLarge(elements.len()));
        }
        for x in &elements {
            if !x.is_positive() {
                return Err(SetError::NonPositive(x.clone()));
            }
        }
        elements.sort();
        for w in elements.windows(2) {
            if w[0] == w[1] {
                return Err(SetError::Duplicate(w[0].clone()));
            }
        }
        for i in 0..elements.len() {
            for j in 0..i {
                let g = elements[i].gcd(&elements[j]);
                if elements.binary_search(&g).is_err() {
                    return Err(SetError::NotGcdClosed {
                        a: elements[j].clone(),
                        b: elements[i].clone(),
                        gcd: g,
                    });
                }
            }
        }
        let structure = divisibility_structure(&elements);
        debug_assert!(structure.is_meet_semilattice());
        Ok(GcdSet {
            elements,
            structure,
            name: None,
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn elements(&self) -> &[BigInt] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &BigInt {
        &self.elements[i]
    }

    /// The divisibility order on the elements.
    pub fn structure(&self) -> &Structure {
        &self.structure
    }

    pub fn index_of(&self, value: &BigInt) -> Option<usize> {
        self.elements.binary_search(value).ok()
    }

    pub fn top_index(&self) -> usize {
        self.elements.len() - 1
    }

    /// Exact Ψ values: `values[i] = Σ_{x_j | x_i} μ(j, i) / x_j^exponent`.
    pub fn psi(&self, exponent: u32) -> PsiVector {
        assert!(exponent >= 1, "exponent must be a positive integer");
        let mu = self.structure.moebius();
        let n = self.len();
        let mut values = Vec::with_capacity(n);
        for i in 0..n {
            let mut acc = BigRational::zero();
            for j in self.structure.down_set(i).iter() {
                let m = mu.mu(j, i);
                if m == 0 {
                    continue;
                }
                let denom = self.elements[j].pow(exponent);
                acc += BigRational::new(BigInt::from(m), denom);
            }
            values.push(acc);
        }
        PsiVector { values, exponent }
    }

    /// Indices with Ψ exactly zero (exponent 1).
    pub fn zero_psi_indices(&self) -> Vec<usize> {
        self.psi(1)
            .values
            .iter()
            .enumerate()
            .filter(|(_, v)| v.is_zero())
            .map(|(i, _)| i)
            .collect()
    }

    /// True iff the LCM matrix of the set is singular, along with all
    /// witnesses Ψ(x_i) = 0.
    pub fn is_singular(&self) -> (bool, Vec<usize>) {
        let zeros = self.zero_psi_indices();
        (!zeros.is_empty(), zeros)
    }

    /// Whether `x_i` exceeding the lcm of its lower covers forces a nonzero
    /// Ψ value there.
    pub fn cover_lcm_predicate(&self, i: usize) -> Result<CoverLcm, SetError> {
        if i >= self.len() {
            return Err(SetError::IndexOutOfRange(i));
        }
        let covers = self.structure.covers_below(i);
        if covers.is_empty() {
            return Err(SetError::NoLowerCovers(i));
        }
        let mut l = BigInt::one();
        for j in covers.iter() {
            l = l.lcm(&self.elements[j]);
        }
        if self.elements[i] > l {
            Ok(CoverLcm::ForcesNonzero)
        } else {
            Ok(CoverLcm::NoConclusion)
        }
    }

    /// `max ω(x_i) ≤ 2` over the whole set.
    pub fn check_sun_condition(&self, budget: u64) -> Result<bool, OmegaError> {
        for x in &self.elements {
            if omega(x, budget)? > 2 {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoverLcm {
    ForcesNonzero,
    NoConclusion,
}

/// Exact Ψ values for a set, one per element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiVector {
    pub values: Vec<Rational>,
    pub exponent: u32,
}

impl PsiVector {
    pub fn top(&self) -> &Rational {
        self.values.last().expect("sets are nonempty")
    }
}

fn divisibility_structure(elements: &[BigInt]) -> Structure {
    let n = elements.len();
    let mut divides = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..i {
            divides[j][i] = elements[i].is_multiple_of(&elements[j]);
        }
    }
    let mut covers = Vec::new();
    for i in 0..n {
        'pair: for j in 0..i {
            if !divides[j][i] {
                continue;
            }
            for k in j + 1..i {
                if divides[j][k] && divides[k][i] {
                    continue 'pair;
                }
            }
            covers.push((j, i));
        }
    }
    Structure::new(n, &covers).expect("divisibility on a GCD-closed set is a meet semilattice")
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OmegaError {
    #[error("factorization budget exceeded for {value} (budget {budget} trial divisions)")]
    BudgetExceeded { value: BigInt, budget: u64 },
}

pub const DEFAULT_FACTOR_BUDGET: u64 = 10_000_000;

/// Number of distinct prime divisors, by deterministic trial division with an
/// iteration budget.
pub fn omega(n: &BigInt, budget: u64) -> Result<u32, OmegaError> {
    assert!(n.is_positive(), "omega needs a positive argument");
    let mut rest = n.clone();
    let mut count = 0u32;
    let mut spent = 0u64;
    let charge = |spent: &mut u64| {
        *spent += 1;
        *spent <= budget
    };
    let two = BigInt::from(2);
    if rest.is_multiple_of(&two) {
        count += 1;
        while rest.is_multiple_of(&two) {
            rest /= &two;
        }
    }
    let mut d = BigInt::from(3);
    while &d * &d <= rest {
        if !charge(&mut spent) {
            return Err(OmegaError::BudgetExceeded {
                value: n.clone(),
                budget,
            });
        }
        if rest.is_multiple_of(&d) {
            count += 1;
            while rest.is_multiple_of(&d) {
                rest /= &d;
            }
        }
        d += 2;
    }
    if rest > BigInt::one() {
        count += 1;
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::ElemSet;

    fn big(v: u64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn four_element_example_is_not_closed() {
        // {1, 2, 15, 42} has a singular LCM matrix but gcd(15, 42) = 3 is
        // missing, so it is not a valid GcdSet; its closure is.
        let err = build_gcd_set([1u64, 2, 15, 42]).unwrap_err();
        assert_eq!(
            err,
            SetError::NotGcdClosed {
                a: big(15),
                b: big(42),
                gcd: big(3)
            }
        );
        let closed = gcd_closure([1u64, 2, 15, 42]).unwrap();
        assert_eq!(closed.elements(), &[big(1), big(2), big(3), big(15), big(42)]);
    }

    #[test]
    fn non_closed_input_errors_with_witness_pair() {
        let err = build_gcd_set([2u64, 3]).unwrap_err();
        assert_eq!(
            err,
            SetError::NotGcdClosed {
                a: big(2),
                b: big(3),
                gcd: big(1)
            }
        );
    }

    #[test]
    fn singleton_and_duplicates() {
        assert!(build_gcd_set([1u64]).is_ok());
        assert_eq!(
            build_gcd_set([2u64, 2]).unwrap_err(),
            SetError::Duplicate(big(2))
        );
        assert_eq!(build_gcd_set(Vec::<BigInt>::new()).unwrap_err(), SetError::Empty);
    }

    #[test]
    fn closure_examples() {
        let c = gcd_closure([2u64, 3]).unwrap();
        assert_eq!(c.elements(), &[big(1), big(2), big(3)]);
        // divisor chains are closed already
        let chain = gcd_closure([2u64, 4, 8]).unwrap();
        assert_eq!(chain.elements(), &[big(2), big(4), big(8)]);
        let coatoms = gcd_closure([66u64, 70, 255]).unwrap();
        let expect: Vec<BigInt> = [1u64, 2, 3, 5, 66, 70, 255].map(big).to_vec();
        assert_eq!(coatoms.elements(), expect.as_slice());
    }

    #[test]
    fn cube_set_meets_and_closure_match_integer_gcds() {
        let s = crate::catalog::singular_cube_8();
        let i66 = s.index_of(&big(66)).unwrap();
        let i70 = s.index_of(&big(70)).unwrap();
        let i2 = s.index_of(&big(2)).unwrap();
        assert_eq!(s.structure().meet(i66, i70), i2);
        // meetcl of the three coatoms picks up the atoms and the bottom
        let i255 = s.index_of(&big(255)).unwrap();
        let closed = s
            .structure()
            .meet_closure(ElemSet::from_iter([i66, i70, i255]));
        let values: Vec<BigInt> = closed.iter().map(|i| s.element(i).clone()).collect();
        let expect: Vec<BigInt> = [1u64, 2, 3, 5, 66, 70, 255].map(big).to_vec();
        assert_eq!(values, expect);
    }

    #[test]
    fn psi_bottom_is_reciprocal() {
        let s = build_gcd_set([2u64, 4, 12]).unwrap();
        let psi = s.psi(1);
        assert_eq!(psi.values[0], BigRational::new(big(1).into(), big(2).into()));
        let psi3 = s.psi(3);
        assert_eq!(psi3.values[0], BigRational::new(big(1).into(), big(8).into()));
    }

    #[test]
    fn psi_zero_at_cube_top() {
        let s = crate::catalog::singular_cube_8();
        let psi = s.psi(1);
        assert!(psi.top().is_zero());
        assert_eq!(s.zero_psi_indices(), vec![7]);
    }

    #[test]
    fn factor_closed_set_is_nonsingular() {
        let s = build_gcd_set([1u64, 2, 3, 6]).unwrap();
        assert!(!s.is_singular().0);
    }

    #[test]
    fn nine_element_counterexample_is_singular() {
        let s = build_gcd_set([1u64, 2, 3, 4, 5, 6, 10, 45, 180]).unwrap();
        assert!(s.is_singular().0);
    }

    #[test]
    fn cover_lcm_predicate_examples() {
        let chain = build_gcd_set([1u64, 2, 4]).unwrap();
        assert_eq!(chain.cover_lcm_predicate(2).unwrap(), CoverLcm::ForcesNonzero);
        assert_eq!(
            chain.cover_lcm_predicate(0).unwrap_err(),
            SetError::NoLowerCovers(0)
        );

        let s8 = crate::catalog::singular_cube_8();
        // top equals the lcm of its covers exactly, so no conclusion
        assert_eq!(s8.cover_lcm_predicate(7).unwrap(), CoverLcm::NoConclusion);

        let s = build_gcd_set([1u64, 2, 3, 12]).unwrap();
        let i12 = s.index_of(&big(12)).unwrap();
        assert_eq!(s.cover_lcm_predicate(i12).unwrap(), CoverLcm::ForcesNonzero);
        assert!(!s.psi(1).values[i12].is_zero());
    }

    #[test]
    fn omega_examples() {
        let b = DEFAULT_FACTOR_BUDGET;
        assert_eq!(omega(&big(1), b).unwrap(), 0);
        assert_eq!(omega(&big(39270), b).unwrap(), 6);
        assert_eq!(omega(&big(1024), b).unwrap(), 1);
        let tiny_budget = omega(&BigInt::parse_bytes(b"1000000016000000063", 10).unwrap(), 10);
        assert!(matches!(tiny_budget, Err(OmegaError::BudgetExceeded { .. })));
    }

    #[test]
    fn sun_condition_examples() {
        let s = build_gcd_set([1u64, 2, 4, 3, 12]).unwrap();
        assert!(s.check_sun_condition(DEFAULT_FACTOR_BUDGET).unwrap());
        let t = crate::catalog::singular_cube_8();
        assert!(!t.check_sun_condition(DEFAULT_FACTOR_BUDGET).unwrap());
    }
}

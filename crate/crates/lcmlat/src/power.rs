//! Power-LCM singularity beyond any prescribed exponent.
//!
//! For a target `M ≥ 1` the construction picks the smallest `k ≥ 2` with
//! `log2(k) ≥ M` and primes `p_1 < … < p_{k-1}` outside {2, 3, 5} with
//! `2·p_i ≥ 5(k-1)`, and forms the GCD-closed set
//! `{1, 2, 3, 5, 6, 10, 15, 2p_1, …, 2p_{k-1}, 30·p_1⋯p_{k-1}}`. The function
//! `h(α) = Σ μ(x_i, x_n) / x_i^α` is positive on `[1, log2 k]` and tends to
//! −1, so a sign-certified bisection brackets a root `α_0 > M`: the power-LCM
//! matrix with that exponent is singular.
//!
//! Real-exponent evaluations run in directed-rounding interval arithmetic at
//! configurable precision, so every reported sign is a certificate, not an
//! estimate. Integer exponents take the exact rational path instead.

use astro_float::{BigFloat, Consts, RoundingMode, Sign, Word};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

use crate::gcdset::{build_gcd_set, GcdSet, SetError};

pub const MIN_PRECISION_BITS: usize = 64;
pub const MAX_PRECISION_BITS: usize = 1 << 14;
pub const DEFAULT_PRECISION_BITS: usize = 128;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PowerError {
    #[error("target exponent must be at least 1, got {0}")]
    TargetBelowOne(f64),
    #[error("target exponent must be finite")]
    TargetNotFinite,
    #[error("precision must be at least {MIN_PRECISION_BITS} bits, got {0}")]
    PrecisionTooLow(usize),
    #[error("exponent must be nonnegative")]
    NegativeExponent,
    #[error("tolerance must be positive")]
    TolNonPositive,
    #[error("sign of h could not be certified at {alpha} even at {MAX_PRECISION_BITS} bits")]
    Uncertifiable { alpha: String },
    #[error(transparent)]
    Set(#[from] SetError),
}

/// The construction data: the target, the chosen `k`, the primes, the set and
/// the Möbius coefficients toward the top element (in element order).
#[derive(Debug, Clone)]
pub struct PowerConstruction {
    pub target: f64,
    pub k: u32,
    pub primes: Vec<u64>,
    pub set: GcdSet,
    pub mu_top: Vec<i64>,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Builds the construction for a target `M ≥ 1`: minimal `k`, then the
/// smallest admissible primes (`p ∉ {2,3,5}`, `2p ≥ 5(k−1)`).
pub fn build_power_construction(target: f64) -> Result<PowerConstruction, PowerError> {
    if !target.is_finite() {
        return Err(PowerError::TargetNotFinite);
    }
    if target < 1.0 {
        return Err(PowerError::TargetBelowOne(target));
    }
    let mut k: u32 = target.exp2().ceil() as u32;
    k = k.max(2);
    while ((k as f64).log2()) < target {
        k += 1;
    }
    let lower = 5 * (k as u64 - 1);
    let mut primes = Vec::with_capacity(k as usize - 1);
    let mut candidate = 2u64;
    while primes.len() < k as usize - 1 {
        if 2 * candidate >= lower
            && candidate != 2
            && candidate != 3
            && candidate != 5
            && is_prime(candidate)
        {
            primes.push(candidate);
        }
        candidate += 1;
    }
    let mut values: Vec<BigInt> = [1u64, 2, 3, 5, 6, 10, 15]
        .iter()
        .map(|&v| BigInt::from(v))
        .collect();
    let mut top = BigInt::from(30u32);
    for &p in &primes {
        values.push(BigInt::from(2 * p));
        top *= BigInt::from(p);
    }
    values.push(top.clone());
    let set = build_gcd_set(values)?.with_name(format!("power-target-{target}"));
    // Möbius coefficients toward the top, by value: the top itself carries 1,
    // the coatoms 6, 10, 15 and every 2p carry −1, the atom 2 carries k,
    // the atoms 3 and 5 carry 1 and the bottom carries −1.
    let mu_top = set
        .elements()
        .iter()
        .map(|x| {
            if *x == BigInt::one() {
                -1
            } else if *x == BigInt::from(2u32) {
                k as i64
            } else if *x == BigInt::from(3u32) || *x == BigInt::from(5u32) {
                1
            } else if *x == top {
                1
            } else {
                -1
            }
        })
        .collect();
    Ok(PowerConstruction {
        target,
        k,
        primes,
        set,
        mu_top,
    })
}

impl PowerConstruction {
    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Largest integer exponent at which positivity of `h` is guaranteed.
    pub fn guaranteed_positive_through(&self) -> u32 {
        (self.k as f64).log2().floor() as u32
    }
}

/// A rigorous enclosure of a real value.
#[derive(Clone, Debug)]
pub struct Interval {
    pub lo: BigFloat,
    pub hi: BigFloat,
}

impl Interval {
    fn point(v: BigFloat) -> Self {
        Interval { lo: v.clone(), hi: v }
    }

    pub fn sign(&self) -> Option<Sign> {
        if self.lo.is_positive() && !self.lo.is_zero() {
            Some(Sign::Pos)
        } else if self.hi.is_negative() && !self.hi.is_zero() {
            Some(Sign::Neg)
        } else {
            None
        }
    }

    /// Exact rational bounds of the enclosure.
    pub fn to_rationals(&self) -> (BigRational, BigRational) {
        (big_float_to_rational(&self.lo), big_float_to_rational(&self.hi))
    }

    pub fn midpoint(&self) -> BigRational {
        let (lo, hi) = self.to_rationals();
        (lo + hi) / BigRational::from_integer(2.into())
    }

    pub fn half_width(&self) -> BigRational {
        let (lo, hi) = self.to_rationals();
        (hi - lo) / BigRational::from_integer(2.into())
    }

    pub fn contains(&self, v: &BigRational) -> bool {
        let (lo, hi) = self.to_rationals();
        lo <= *v && *v <= hi
    }
}

/// One evaluation of `h`: exact at integer exponents, an interval otherwise.
#[derive(Clone, Debug)]
pub enum HValue {
    Exact(BigRational),
    Enclosure(Interval),
}

impl HValue {
    /// Best available value and a bound on its distance from the truth.
    pub fn value_and_error(&self) -> (BigRational, BigRational) {
        match self {
            HValue::Exact(v) => (v.clone(), BigRational::zero()),
            HValue::Enclosure(iv) => (iv.midpoint(), iv.half_width()),
        }
    }

    pub fn sign(&self) -> Option<Sign> {
        match self {
            HValue::Exact(v) => {
                if v.is_zero() {
                    None
                } else if v.is_positive() {
                    Some(Sign::Pos)
                } else {
                    Some(Sign::Neg)
                }
            }
            HValue::Enclosure(iv) => iv.sign(),
        }
    }
}

fn bigint_to_float(x: &BigInt) -> BigFloat {
    debug_assert!(!x.is_negative());
    let (_, digits) = x.to_u64_digits();
    if digits.is_empty() {
        return BigFloat::from_u64(0, MIN_PRECISION_BITS);
    }
    let words: Vec<Word> = digits.iter().map(|&d| d as Word).collect();
    let bits = words.len() * (Word::BITS as usize);
    BigFloat::from_words(&words, Sign::Pos, bits as astro_float::Exponent)
}

fn big_float_to_rational(f: &BigFloat) -> BigRational {
    let (words, n, sign, e, _) = f
        .as_raw_parts()
        .expect("finite values only in certified evaluation");
    let mut mant = BigInt::zero();
    for w in words.iter().rev() {
        mant = (mant << Word::BITS) + BigInt::from(*w);
    }
    if sign == Sign::Neg {
        mant = -mant;
    }
    let shift = e as i64 - n as i64;
    if shift >= 0 {
        BigRational::from_integer(mant << shift as usize)
    } else {
        BigRational::new(mant, BigInt::one() << (-shift) as usize)
    }
}

/// `x^α` for integer `x ≥ 2` and a positive rational exponent, enclosed with
/// directed rounding at precision `p`.
fn pow_interval(
    x: &BigInt,
    alpha_num: &BigFloat,
    alpha_den: &BigFloat,
    p: usize,
    cc: &mut Consts,
) -> Interval {
    let base = bigint_to_float(x);
    let a_lo = alpha_num.div(alpha_den, p, RoundingMode::Down);
    let a_hi = alpha_num.div(alpha_den, p, RoundingMode::Up);
    // base ≥ 2 so the power grows with the exponent
    let lo = base.pow(&a_lo, p, RoundingMode::Down, cc);
    let hi = base.pow(&a_hi, p, RoundingMode::Up, cc);
    Interval { lo, hi }
}

/// Evaluates `h(α) = Σ μ(x_i, x_n) / x_i^α`.
///
/// Nonnegative integer `α` takes the exact rational route. Other rationals
/// are evaluated as a directed-rounding enclosure at `precision_bits`.
pub fn h_eval(
    c: &PowerConstruction,
    alpha: &BigRational,
    precision_bits: usize,
) -> Result<HValue, PowerError> {
    if alpha.is_negative() {
        return Err(PowerError::NegativeExponent);
    }
    if precision_bits < MIN_PRECISION_BITS {
        return Err(PowerError::PrecisionTooLow(precision_bits));
    }
    if alpha.is_integer() {
        let e = alpha
            .to_integer()
            .to_u32()
            .expect("integer exponents of practical size");
        if e == 0 {
            // Σ μ over a nontrivial set vanishes
            let total: i64 = c.mu_top.iter().sum();
            return Ok(HValue::Exact(BigRational::from_integer(total.into())));
        }
        return Ok(HValue::Exact(c.set.psi(e).top().clone()));
    }
    // ensure α itself is representable tightly at the working precision
    let p = precision_bits
        .max(alpha.numer().bits() as usize + 64)
        .max(alpha.denom().bits() as usize + 64);
    let mut cc = Consts::new().expect("constants cache");
    let num = bigint_to_float(&alpha.numer().abs());
    let den = bigint_to_float(alpha.denom());
    let mut lo = BigFloat::from_u64(0, p);
    let mut hi = BigFloat::from_u64(0, p);
    for (i, mu) in c.mu_top.iter().enumerate() {
        if *mu == 0 {
            continue;
        }
        let x = c.set.element(i);
        let term = if x.is_one() {
            Interval::point(BigFloat::from_u64(1, p))
        } else {
            let powed = pow_interval(x, &num, &den, p, &mut cc);
            // reciprocal flips the enclosure
            let one = BigFloat::from_u64(1, p);
            Interval {
                lo: one.div(&powed.hi, p, RoundingMode::Down),
                hi: one.div(&powed.lo, p, RoundingMode::Up),
            }
        };
        let m = BigFloat::from_i64(*mu, p);
        let (t_lo, t_hi) = if *mu > 0 {
            (
                m.mul(&term.lo, p, RoundingMode::Down),
                m.mul(&term.hi, p, RoundingMode::Up),
            )
        } else {
            (
                m.mul(&term.hi, p, RoundingMode::Down),
                m.mul(&term.lo, p, RoundingMode::Up),
            )
        };
        lo = lo.add(&t_lo, p, RoundingMode::Down);
        hi = hi.add(&t_hi, p, RoundingMode::Up);
    }
    Ok(HValue::Enclosure(Interval { lo, hi }))
}

/// A sign-certified endpoint evaluation attached to a bracket.
#[derive(Clone, Debug)]
pub struct CertifiedValue {
    /// Midpoint of the certified enclosure (exact value for integer α).
    pub value: BigRational,
    /// Bound on the distance between `value` and the true h value.
    pub error_bound: BigRational,
    pub sign: Sign,
}

impl CertifiedValue {
    fn from_hvalue(h: &HValue) -> Option<Self> {
        let sign = h.sign()?;
        let (value, error_bound) = h.value_and_error();
        Some(CertifiedValue {
            value,
            error_bound,
            sign,
        })
    }
}

/// A certified root bracket: `h(lo) > 0`, `h(hi) < 0`, `hi − lo ≤ tol`.
#[derive(Clone, Debug)]
pub struct AlphaBracket {
    pub lo: BigRational,
    pub hi: BigRational,
    pub h_lo: CertifiedValue,
    pub h_hi: CertifiedValue,
    /// Working precision of the final certifications.
    pub precision_bits: usize,
}

impl AlphaBracket {
    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }
}

/// Certifies the sign of `h(α)`, raising precision on demand.
fn certified_sign(
    c: &PowerConstruction,
    alpha: &BigRational,
    precision: &mut usize,
) -> Result<(CertifiedValue, HValue), PowerError> {
    loop {
        let h = h_eval(c, alpha, *precision)?;
        if let Some(cv) = CertifiedValue::from_hvalue(&h) {
            return Ok((cv, h));
        }
        if matches!(h, HValue::Exact(_)) {
            // exactly zero: no sign exists at any precision
            return Err(PowerError::Uncertifiable {
                alpha: alpha.to_string(),
            });
        }
        if *precision >= MAX_PRECISION_BITS {
            return Err(PowerError::Uncertifiable {
                alpha: alpha.to_string(),
            });
        }
        *precision = (*precision * 2).min(MAX_PRECISION_BITS);
    }
}

/// Brackets a root `α_0 > M` of `h` to width `tol` with certified endpoint
/// signs. The lower endpoint starts at the target `M`, where positivity is
/// guaranteed; the upper endpoint is found by doubling the offset until a
/// certified negative evaluation appears.
pub fn find_alpha0(
    c: &PowerConstruction,
    tol: &BigRational,
    precision_bits: usize,
) -> Result<AlphaBracket, PowerError> {
    if !tol.is_positive() {
        return Err(PowerError::TolNonPositive);
    }
    if precision_bits < MIN_PRECISION_BITS {
        return Err(PowerError::PrecisionTooLow(precision_bits));
    }
    let mut precision = precision_bits.max(DEFAULT_PRECISION_BITS);
    let mut lo = BigRational::from_f64(c.target).ok_or(PowerError::TargetNotFinite)?;
    let (mut h_lo, _) = certified_sign(c, &lo, &mut precision)?;
    if h_lo.sign != Sign::Pos {
        // cannot happen for this construction family, but stay honest
        return Err(PowerError::Uncertifiable { alpha: lo.to_string() });
    }
    let mut offset = BigRational::one();
    let (mut hi, mut h_hi);
    loop {
        let candidate = &lo + &offset;
        let (cv, _) = certified_sign(c, &candidate, &mut precision)?;
        if cv.sign == Sign::Neg {
            hi = candidate;
            h_hi = cv;
            break;
        }
        offset = offset * BigRational::from_integer(2.into());
    }
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    while (&hi - &lo) > *tol {
        let mid = (&lo + &hi) * &half;
        let (cv, _) = certified_sign(c, &mid, &mut precision)?;
        match cv.sign {
            Sign::Pos => {
                lo = mid;
                h_lo = cv;
            }
            Sign::Neg => {
                hi = mid;
                h_hi = cv;
            }
        }
    }
    Ok(AlphaBracket {
        lo,
        hi,
        h_lo,
        h_hi,
        precision_bits: precision,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Roots;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn construction_for_target_one() {
        let c = build_power_construction(1.0).unwrap();
        assert_eq!(c.k, 2);
        assert_eq!(c.primes, vec![7]);
        let values: Vec<BigInt> = [1u64, 2, 3, 5, 6, 10, 14, 15, 210]
            .iter()
            .map(|&v| BigInt::from(v))
            .collect();
        assert_eq!(c.set.elements(), values.as_slice());
    }

    #[test]
    fn construction_for_target_two_and_three() {
        let c2 = build_power_construction(2.0).unwrap();
        assert_eq!(c2.k, 4);
        assert_eq!(c2.primes.len(), 3);
        assert_eq!(c2.len(), 11);
        for &p in &c2.primes {
            assert!(2 * p >= 5 * (c2.k as u64 - 1));
            assert!(![2, 3, 5].contains(&p));
        }
        let c3 = build_power_construction(3.0).unwrap();
        assert_eq!(c3.k, 8);
        assert_eq!(c3.primes.len(), 7);
        assert_eq!(c3.len(), 15);
    }

    #[test]
    fn target_below_one_is_rejected() {
        assert!(matches!(
            build_power_construction(0.5).unwrap_err(),
            PowerError::TargetBelowOne(_)
        ));
    }

    #[test]
    fn mu_pattern_matches_moebius_recursion() {
        for target in [1.0, 2.0, 3.0, 4.2] {
            let c = build_power_construction(target).unwrap();
            let mu = c.set.structure().moebius();
            let top = c.set.top_index();
            let expected: Vec<i64> = (0..c.len()).map(|i| mu.mu(i, top)).collect();
            assert_eq!(c.mu_top, expected, "target {target}");
        }
    }

    #[test]
    fn exact_h_values_for_smallest_construction() {
        let c = build_power_construction(1.0).unwrap();
        match h_eval(&c, &rat(1, 1), 64).unwrap() {
            HValue::Exact(v) => assert_eq!(v, rat(2, 15)),
            _ => panic!("integer exponent must be exact"),
        }
        match h_eval(&c, &rat(2, 1), 64).unwrap() {
            HValue::Exact(v) => {
                assert!(v.is_negative());
                assert_eq!(v, rat(-208, 525));
            }
            _ => panic!("integer exponent must be exact"),
        }
        // h(0) is the plain Möbius row sum, which vanishes
        match h_eval(&c, &rat(0, 1), 64).unwrap() {
            HValue::Exact(v) => assert!(v.is_zero()),
            _ => panic!(),
        }
    }

    #[test]
    fn interval_contains_exact_at_matching_points() {
        let c = build_power_construction(1.0).unwrap();
        // compare the enclosure at α = 3/2 against exact square-root bounds
        let iv = match h_eval(&c, &rat(3, 2), 128).unwrap() {
            HValue::Enclosure(iv) => iv,
            _ => panic!("non-integer exponent must give an enclosure"),
        };
        let (lo, hi) = iv.to_rationals();
        assert!(lo < hi);
        let (oracle_lo, oracle_hi) = h_three_halves_bounds(&c, 192);
        assert!(lo <= oracle_hi && oracle_lo <= hi, "enclosures must overlap");
        assert!(iv.half_width() < rat(1, 1 << 20));
    }

    /// Independent oracle for h(3/2): bounds each x^(3/2) = sqrt(x^3) by
    /// binary search on rationals with denominator 2^bits.
    fn h_three_halves_bounds(c: &PowerConstruction, bits: usize) -> (BigRational, BigRational) {
        let mut lo_sum = BigRational::zero();
        let mut hi_sum = BigRational::zero();
        for (i, mu) in c.mu_top.iter().enumerate() {
            let x = c.set.element(i);
            let (t_lo, t_hi) = if x.is_one() {
                (BigRational::one(), BigRational::one())
            } else {
                let cube = x * x * x;
                let (s_lo, s_hi) = sqrt_bounds(&cube, bits);
                // reciprocal flips
                (s_hi.recip(), s_lo.recip())
            };
            let m = BigRational::from_integer((*mu).into());
            if *mu > 0 {
                lo_sum += &m * t_lo;
                hi_sum += &m * t_hi;
            } else {
                lo_sum += &m * t_hi;
                hi_sum += &m * t_lo;
            }
        }
        (lo_sum, hi_sum)
    }

    /// sqrt(n) within 2^-bits, via integer square root of n · 4^bits.
    fn sqrt_bounds(n: &BigInt, bits: usize) -> (BigRational, BigRational) {
        let scaled = n << (2 * bits);
        let root = scaled.sqrt(); // floor square root
        let denom = BigInt::one() << bits;
        let lo = BigRational::new(root.clone(), denom.clone());
        let hi = BigRational::new(root + 1, denom);
        (lo, hi)
    }

    #[test]
    fn enclosures_tighten_with_precision() {
        let c = build_power_construction(2.0).unwrap();
        let alpha = rat(5, 3);
        let mut widths = Vec::new();
        // precisions a full word apart; smaller gaps can land in the same
        // internal word count
        for p in [64usize, 256, 1024] {
            match h_eval(&c, &alpha, p).unwrap() {
                HValue::Enclosure(iv) => {
                    let (lo, hi) = iv.to_rationals();
                    assert!(lo <= hi);
                    widths.push(hi - lo);
                }
                _ => panic!(),
            }
        }
        assert!(widths[1] < widths[0]);
        assert!(widths[2] < widths[1]);
        // nested containment: the tighter interval sits inside the looser one
        let coarse = match h_eval(&c, &alpha, 64).unwrap() {
            HValue::Enclosure(iv) => iv.to_rationals(),
            _ => unreachable!(),
        };
        let fine = match h_eval(&c, &alpha, 1024).unwrap() {
            HValue::Enclosure(iv) => iv.to_rationals(),
            _ => unreachable!(),
        };
        assert!(coarse.0 <= fine.0 && fine.1 <= coarse.1);
    }

    #[test]
    fn h_tends_to_minus_one() {
        let c = build_power_construction(1.0).unwrap();
        match h_eval(&c, &rat(200, 1), 64).unwrap() {
            HValue::Exact(v) => {
                let diff = v + BigRational::one();
                assert!(diff.abs() < rat(1, 1_000_000));
            }
            _ => panic!(),
        }
    }

    #[test]
    fn bracket_for_target_one() {
        let c = build_power_construction(1.0).unwrap();
        let tol = rat(1, 1i64 << 40);
        let b = find_alpha0(&c, &tol, 128).unwrap();
        assert!(b.lo >= rat(1, 1));
        assert!(b.hi <= rat(2, 1));
        assert!(b.width() <= tol);
        assert_eq!(b.h_lo.sign, Sign::Pos);
        assert_eq!(b.h_hi.sign, Sign::Neg);
        // endpoint certificates exclude zero
        assert!(b.h_lo.value.abs() > b.h_lo.error_bound);
        assert!(b.h_hi.value.abs() > b.h_hi.error_bound);
    }

    #[test]
    fn coarse_tolerance_still_certifies() {
        let c = build_power_construction(1.0).unwrap();
        let b = find_alpha0(&c, &rat(1, 2), 128).unwrap();
        assert!(b.width() <= rat(1, 2));
        assert_eq!(b.h_lo.sign, Sign::Pos);
        assert_eq!(b.h_hi.sign, Sign::Neg);
    }

    #[test]
    fn bracket_for_target_three_stays_above_three() {
        let c = build_power_construction(3.0).unwrap();
        let b = find_alpha0(&c, &rat(1, 1 << 20), 128).unwrap();
        assert!(b.lo >= rat(3, 1));
        assert_eq!(b.h_lo.sign, Sign::Pos);
        assert_eq!(b.h_hi.sign, Sign::Neg);
    }

    #[test]
    fn integer_checkpoints_positive_through_log2_k() {
        for target in [1.0, 2.0, 3.0] {
            let c = build_power_construction(target).unwrap();
            for e in 1..=c.guaranteed_positive_through() {
                match h_eval(&c, &rat(e as i64, 1), 64).unwrap() {
                    HValue::Exact(v) => assert!(v.is_positive(), "target {target}, α {e}"),
                    _ => panic!(),
                }
            }
        }
    }

    #[test]
    fn precision_floor_is_enforced()  {
        let c = build_power_construction(1.0).unwrap();
        assert!(matches!(
            h_eval(&c, &rat(3, 2), 32).unwrap_err(),
            PowerError::PrecisionTooLow(32)
        ));
        assert!(matches!(
            find_alpha0(&c, &rat(1, 4), 32).unwrap_err(),
            PowerError::PrecisionTooLow(32)
        ));
        assert!(matches!(
            find_alpha0(&c, &BigRational::zero(), 128).unwrap_err(),
            PowerError::TolNonPositive
        ));
    }
}

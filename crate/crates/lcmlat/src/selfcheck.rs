//! The end-to-end reproduction suite: every headline number and claim the
//! crate is built around, checked from scratch. The CLI `selftest` command
//! and the acceptance test target both run these criteria.

use std::sync::OnceLock;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::canon::canonical_form;
use crate::catalog;
use crate::construct::{
    self, classify9, BetweenVariant, ClassLabel, MaximalAnchor,
};
use crate::enumerate::{enumerate_with_threads, filter_special};
use crate::gcdset::{CoverLcm, GcdSet, DEFAULT_FACTOR_BUDGET};
use crate::matrix::{det_bareiss, det_lcm, factorize, lcm_matrix, lcm_matrix_of_values};
use crate::power::{build_power_construction, find_alpha0, h_eval, HValue};
use crate::sample;

pub const DEFAULT_SEED: u64 = 0x6c63_6d6c_6174; // "lcmlat"

/// Known census counts for 1..=10 elements.
pub const EXPECTED_COUNTS: [u64; 10] = [1, 1, 2, 5, 15, 53, 222, 1078, 5994, 37622];

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: &'static str,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CriterionResult {
    fn new(id: &'static str, name: &'static str, passed: bool, detail: String) -> Self {
        CriterionResult {
            id,
            name,
            passed,
            detail,
        }
    }

    pub fn line(&self) -> String {
        format!(
            "criterion {:<14} {:<34} {}  {}",
            self.id,
            self.name,
            if self.passed { "PASS" } else { "FAIL" },
            self.detail
        )
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Config {
    pub seed: u64,
    pub threads: usize,
    /// Largest census level to verify (10 for the full suite).
    pub max_enumeration: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            seed: DEFAULT_SEED,
            threads: 1,
            max_enumeration: 10,
        }
    }
}

fn enumeration_cache(n: usize, threads: usize) -> &'static Vec<crate::poset::Structure> {
    static CACHE: OnceLock<Vec<crate::poset::Structure>> = OnceLock::new();
    assert!(n <= 10);
    CACHE.get_or_init(|| enumerate_with_threads(10, threads))
    // callers slice by re-enumerating smaller levels themselves; only the
    // expensive level is cached
}

/// Criterion 1: exact census counts with the stated runtime budget.
pub fn criterion_counts(cfg: &Config) -> CriterionResult {
    let start = Instant::now();
    let limit = cfg.max_enumeration.clamp(1, 10);
    let counts = crate::enumerate::level_counts(limit.min(9), cfg.threads);
    let through_nine = start.elapsed();
    let mut got: Vec<u64> = counts;
    let mut ten_elapsed = None;
    if limit == 10 {
        let t = Instant::now();
        got.push(enumeration_cache(10, cfg.threads).len() as u64);
        ten_elapsed = Some(t.elapsed());
    }
    let expected = &EXPECTED_COUNTS[..limit];
    let counts_ok = got == expected;
    let time_ok = through_nine.as_secs() < 300
        && ten_elapsed.map_or(true, |t| t.as_secs() < 3600);
    let detail = format!(
        "counts {:?} (n ≤ 9 in {:.1?}{})",
        got,
        through_nine,
        match ten_elapsed {
            Some(t) => format!(", n = 10 in {t:.1?}"),
            None => String::new(),
        }
    );
    CriterionResult::new("1", "census counts", counts_ok && time_ok, detail)
}

/// Criterion 2: the special filter finds exactly the 13 embedded structures
/// at nine elements and 166 classes at ten.
pub fn criterion_special_filter(cfg: &Config) -> CriterionResult {
    let nine = enumerate_with_threads(9, cfg.threads);
    let special9 = filter_special(&nine);
    let mut found: Vec<_> = special9.iter().map(|r| r.canonical_form.clone()).collect();
    found.sort();
    let mut fixtures: Vec<_> = construct::all_labels()
        .into_iter()
        .map(|l| canonical_form(&construct::fixture(l)))
        .collect();
    fixtures.sort();
    let nine_ok = special9.len() == 13 && found == fixtures;

    let ten_ok;
    let ten_count;
    if cfg.max_enumeration >= 10 {
        let ten = enumeration_cache(10, cfg.threads);
        let special10 = filter_special(ten);
        ten_count = special10.len();
        ten_ok = ten_count == 166;
    } else {
        ten_count = 0;
        ten_ok = true;
    }
    // not part of the pass verdict: the eight-element count is unpublished
    let eight = enumerate_with_threads(8, cfg.threads);
    let special8 = filter_special(&eight).len();
    let detail = format!(
        "n=9: {} classes matching the fixtures; n=10: {}; (n=8 gives {})",
        special9.len(),
        if cfg.max_enumeration >= 10 {
            ten_count.to_string()
        } else {
            "skipped".into()
        },
        special8
    );
    CriterionResult::new("2", "special-structure filter", nine_ok && ten_ok, detail)
}

/// Expected Möbius coefficients toward the top, given by element value.
fn expected_top_row(set: &GcdSet, coeffs: &[(u64, i64)]) -> bool {
    let mu = set.structure().moebius();
    let top = set.top_index();
    if set.len() != coeffs.len() {
        return false;
    }
    coeffs.iter().all(|&(value, coeff)| {
        set.index_of(&BigInt::from(value))
            .map(|i| mu.mu(i, top) == coeff)
            .unwrap_or(false)
    })
}

/// Criterion 3: exact Ψ(top) = 0 for the six catalog sets, with the displayed
/// coefficient patterns.
pub fn criterion_zero_tops(_cfg: &Config) -> CriterionResult {
    let cases: Vec<(GcdSet, Vec<(u64, i64)>)> = vec![
        (
            catalog::singular_cube_8(),
            vec![
                (39270, 1),
                (255, -1),
                (70, -1),
                (66, -1),
                (5, 1),
                (3, 1),
                (2, 1),
                (1, -1),
            ],
        ),
        (
            catalog::nine_i_example(),
            vec![
                (180, 1),
                (45, -1),
                (10, -1),
                (6, -1),
                (4, -1),
                (5, 1),
                (3, 1),
                (2, 2),
                (1, -1),
            ],
        ),
        (
            catalog::nine_j_example(),
            vec![
                (4476780, 1),
                (2907, -1),
                (1463, -1),
                (748, -1),
                (5, -1),
                (19, 1),
                (17, 1),
                (11, 1),
                (1, 0),
            ],
        ),
        (
            catalog::singular_13(),
            vec![
                (3679538850, 1),
                (16675, -1),
                (6877, -1),
                (533, -1),
                (369, -1),
                (75, -1),
                (2, -1),
                (41, 1),
                (25, 1),
                (23, 1),
                (13, 1),
                (3, 1),
                (1, 0),
            ],
        ),
        (
            catalog::singular_14(),
            vec![
                (33105384312, 1),
                (196859, -1),
                (1859, -1),
                (209, -1),
                (147, -1),
                (56, -1),
                (6, -1),
                (19, 1),
                (13, 1),
                (11, 1),
                (7, 1),
                (3, 1),
                (2, 1),
                (1, -1),
            ],
        ),
        (
            catalog::singular_16(),
            vec![
                (3029801294520, 1),
                (39308760, -1),
                (137445, -1),
                (45738, -1),
                (1820, -1),
                (255, 1),
                (231, 1),
                (54, 1),
                (35, 1),
                (20, 1),
                (14, 1),
                (7, -1),
                (5, -1),
                (3, -1),
                (2, -1),
                (1, 1),
            ],
        ),
    ];
    let mut all_ok = true;
    let mut slow = false;
    let mut details = Vec::new();
    for (set, coeffs) in &cases {
        let t = Instant::now();
        let psi_zero = set.psi(1).top().is_zero();
        let elapsed = t.elapsed();
        let row_ok = expected_top_row(set, coeffs);
        // the displayed sum itself, assembled from the frozen coefficients
        let sum: BigRational = coeffs
            .iter()
            .map(|&(value, coeff)| {
                BigRational::new(BigInt::from(coeff), BigInt::from(value))
            })
            .sum();
        let ok = psi_zero && row_ok && sum.is_zero();
        if elapsed.as_millis() > 1000 {
            slow = true;
        }
        all_ok &= ok;
        details.push(format!(
            "{}:{}",
            set.name().unwrap_or("?"),
            if ok { "0" } else { "NONZERO" }
        ));
    }
    CriterionResult::new(
        "3",
        "vanishing top Ψ values",
        all_ok && !slow,
        details.join(" "),
    )
}

/// Criterion 4, as stated: cube subsemilattice counts 0 / 2 / 2 with the
/// required witness overlaps.
///
/// The 16-element clause cannot hold: that set contains 30 cube
/// subsemilattices (for example {1, 2, 5, 7, 14, 20, 35, 1820} is closed
/// under gcd and carries the cube order), of which one pair is totally
/// disjoint. The criterion is evaluated exactly as written and reports the
/// discrepancy; [`cube_disjoint_pair_exists`] checks the true claim.
pub fn criterion_cube_search(_cfg: &Config) -> CriterionResult {
    let w13 = construct::find_cube_subsemilattices(&catalog::singular_13()).unwrap();
    let s14 = catalog::singular_14();
    let w14 = construct::find_cube_subsemilattices(&s14).unwrap();
    let w16 = construct::find_cube_subsemilattices(&catalog::singular_16()).unwrap();
    let ok13 = w13.is_empty();
    let ok14 = w14.len() == 2 && {
        let shared = w14[0].index_set().intersect(w14[1].index_set());
        shared.len() == 2 && shared.contains(0) && shared.contains(s14.top_index())
    };
    let ok16 = w16.len() == 2
        && w16[0].index_set().intersect(w16[1].index_set()).is_empty();
    CriterionResult::new(
        "4",
        "cube subsemilattice counts",
        ok13 && ok14 && ok16,
        format!(
            "13-set: {}, 14-set: {}, 16-set: {}{}",
            w13.len(),
            w14.len(),
            w16.len(),
            if ok16 {
                String::new()
            } else {
                " (the stated count 2 is unattainable; the exhaustive search \
                 is correct and a totally disjoint pair does exist)"
                    .to_string()
            }
        ),
    )
}

/// The substantive claim behind the 16-element example: among all cube
/// subsemilattices there is a totally disjoint pair, and the 14-element
/// example has exactly two, sharing top and bottom.
pub fn cube_disjoint_pair_exists() -> bool {
    let w16 = construct::find_cube_subsemilattices(&catalog::singular_16()).unwrap();
    w16.iter().enumerate().any(|(i, a)| {
        w16[i + 1..]
            .iter()
            .any(|b| a.index_set().intersect(b.index_set()).is_empty())
    })
}

/// Criterion 5: the factorization determinant equals fraction-free
/// elimination on the catalog sets and 200 seeded random sets.
pub fn criterion_determinant_oracle(cfg: &Config) -> CriterionResult {
    let mut checked = 0usize;
    // the non-closed four-element example only admits the elimination route
    let raw4 = lcm_matrix_of_values(&catalog::non_closed_singular_4_values(), 1);
    let mut ok = det_bareiss(&raw4).is_zero();
    checked += 1;
    for set in catalog::small_sets() {
        ok &= det_lcm(&set, 1) == det_bareiss(&lcm_matrix(&set, 1));
        ok &= factorize(&set, 1).verify(&set);
        checked += 1;
    }
    let m1 = build_power_construction(1.0).unwrap().set;
    ok &= det_lcm(&m1, 1) == det_bareiss(&lcm_matrix(&m1, 1));
    checked += 1;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x05);
    for _ in 0..200 {
        let set = sample::random_gcd_set(&mut rng, 3, 7);
        ok &= det_lcm(&set, 1) == det_bareiss(&lcm_matrix(&set, 1));
        checked += 1;
    }
    CriterionResult::new(
        "5",
        "determinant cross-check",
        ok,
        format!("{checked} sets, both routes equal"),
    )
}

/// Criterion 6: the eight insertion procedures on the cube seed produce
/// GCD-closed singular sets of the intended classes.
pub fn criterion_constructions(_cfg: &Config) -> CriterionResult {
    let results = construction_outcomes();
    let ok = results.iter().all(|(label, set)| {
        set.len() == 9 && set.is_singular().0 && classify9(set).unwrap() == *label
    });
    let labels: Vec<String> = results.iter().map(|(l, _)| l.to_string()).collect();
    CriterionResult::new(
        "6",
        "insertion constructions",
        ok && results.len() == 8,
        labels.join(" "),
    )
}

/// The eight constructed sets with their intended labels.
pub fn construction_outcomes() -> Vec<(ClassLabel, GcdSet)> {
    let seed = catalog::singular_cube_8();
    let a = BigInt::from(13);
    let mut out = Vec::new();
    out.push((
        ClassLabel::NineA,
        construct::insert_maximal(&seed, &a, MaximalAnchor::Bottom).unwrap(),
    ));
    out.push((
        ClassLabel::NineB,
        construct::insert_maximal(&seed, &a, MaximalAnchor::Atom).unwrap(),
    ));
    out.push((
        ClassLabel::NineC,
        construct::insert_maximal(&seed, &a, MaximalAnchor::Coatom).unwrap(),
    ));
    out.push((
        ClassLabel::NineD,
        construct::insert_maximal(&seed, &a, MaximalAnchor::Top).unwrap(),
    ));
    out.push((
        ClassLabel::NineE,
        construct::insert_minimum(&seed, &BigInt::from(2)).unwrap(),
    ));
    for (variant, label) in [
        (BetweenVariant::F, ClassLabel::NineF),
        (BetweenVariant::G, ClassLabel::NineG),
        (BetweenVariant::H, ClassLabel::NineH),
    ] {
        out.push((label, construct::insert_between(&seed, variant).unwrap().set));
    }
    out
}

/// Criterion 7: sign sweeps over random realizations of 9_K, 9_L and 9_M.
pub fn criterion_sign_sweeps(cfg: &Config) -> CriterionResult {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x07);
    let mut ok = true;
    for _ in 0..200 {
        let set = sample::random_realization(&mut rng, &construct::fixture(ClassLabel::NineK), 1_000_000);
        ok &= construct::check_9k_sign(&set).unwrap().is_negative();
    }
    for label in [ClassLabel::NineL, ClassLabel::NineM] {
        for _ in 0..200 {
            let set = sample::random_realization(&mut rng, &construct::fixture(label), 1_000_000);
            ok &= construct::check_9lm_sign(&set).unwrap().is_positive();
        }
    }
    CriterionResult::new(
        "7",
        "9_K negative, 9_L/9_M positive",
        ok,
        "200 realizations each".into(),
    )
}

/// Criterion 8: 500 seeded sets with at most two prime divisors per element
/// are all nonsingular.
pub fn criterion_sun_property(cfg: &Config) -> CriterionResult {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x08);
    let mut ok = true;
    for _ in 0..500 {
        let set = sample::random_two_prime_set(&mut rng, 12);
        ok &= set.check_sun_condition(DEFAULT_FACTOR_BUDGET).unwrap();
        ok &= !set.is_singular().0;
    }
    CriterionResult::new(
        "8",
        "two-prime sets nonsingular",
        ok,
        "500 seeded sets".into(),
    )
}

/// Criterion 9: the double-chain and cover-lcm conditions never coincide
/// with a vanishing Ψ value, across 500 seeded sets.
pub fn criterion_nonzero_guarantees(cfg: &Config) -> CriterionResult {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x09);
    let mut ok = true;
    let mut double_chain_hits = 0usize;
    let mut cover_lcm_hits = 0usize;
    for _ in 0..500 {
        let prime_count = 2 + rand::RngExt::random_range(&mut rng, 0..3usize);
        let set = sample::random_gcd_set(&mut rng, prime_count, 12);
        let psi = set.psi(1);
        let structure = set.structure();
        for i in 0..set.len() {
            if structure.generates_double_chain(i) {
                double_chain_hits += 1;
                ok &= !psi.values[i].is_zero();
            }
            if !structure.covers_below(i).is_empty()
                && set.cover_lcm_predicate(i).unwrap() == CoverLcm::ForcesNonzero
            {
                cover_lcm_hits += 1;
                ok &= !psi.values[i].is_zero();
            }
        }
    }
    CriterionResult::new(
        "9",
        "nonzero-Ψ guarantees",
        ok,
        format!("{double_chain_hits} double-chain and {cover_lcm_hits} cover-lcm witnesses"),
    )
}

/// Independent oracle for integer h values: the frozen Möbius pattern summed
/// directly, bypassing the recursion-based Ψ path.
fn pattern_h(c: &crate::power::PowerConstruction, exponent: u32) -> BigRational {
    c.mu_top
        .iter()
        .enumerate()
        .map(|(i, &m)| BigRational::new(BigInt::from(m), c.set.element(i).pow(exponent)))
        .sum()
}

/// Criterion 10: the power construction for target 1 and its certified
/// bracket, plus the lower-bound property at target 3.
pub fn criterion_power_bracket(_cfg: &Config) -> CriterionResult {
    let start = Instant::now();
    let c1 = build_power_construction(1.0).unwrap();
    let expected: Vec<BigInt> = [1u64, 2, 3, 5, 6, 10, 14, 15, 210]
        .iter()
        .map(|&v| BigInt::from(v))
        .collect();
    let set_ok = c1.set.elements() == expected.as_slice();
    let h1 = match h_eval(&c1, &BigRational::one(), 128).unwrap() {
        HValue::Exact(v) => v,
        _ => unreachable!(),
    };
    let h2 = match h_eval(&c1, &BigRational::from_integer(2.into()), 128).unwrap() {
        HValue::Exact(v) => v,
        _ => unreachable!(),
    };
    let signs_ok = h1.is_positive()
        && h2.is_negative()
        && h1 == pattern_h(&c1, 1)
        && h2 == pattern_h(&c1, 2);
    let tol = BigRational::new(BigInt::one(), BigInt::one() << 40);
    let bracket = find_alpha0(&c1, &tol, 128).unwrap();
    let one = BigRational::one();
    let two = BigRational::from_integer(2.into());
    let bracket_ok = bracket.lo >= one
        && bracket.hi <= two
        && bracket.width() <= tol
        && bracket.h_lo.sign == astro_float::Sign::Pos
        && bracket.h_hi.sign == astro_float::Sign::Neg
        && bracket.h_lo.value.abs() > bracket.h_lo.error_bound
        && bracket.h_hi.value.abs() > bracket.h_hi.error_bound;
    let c3 = build_power_construction(3.0).unwrap();
    let b3 = find_alpha0(&c3, &BigRational::new(BigInt::one(), BigInt::from(1 << 20)), 128).unwrap();
    let three_ok = b3.lo >= BigRational::from_integer(3.into())
        && b3.h_lo.sign == astro_float::Sign::Pos
        && b3.h_hi.sign == astro_float::Sign::Neg;
    let elapsed = start.elapsed();
    let time_ok = elapsed.as_secs() < 60;
    CriterionResult::new(
        "10",
        "power-LCM certified brackets",
        set_ok && signs_ok && bracket_ok && three_ok && time_ok,
        format!(
            "h(1) = {h1}, h(2) = {h2}, bracket width ≤ 2^-40 inside (1,2); target-3 bracket at lo = {:.6} ({elapsed:.1?})",
            rational_to_f64(&b3.lo)
        ),
    )
}

fn rational_to_f64(v: &BigRational) -> f64 {
    num_traits::ToPrimitive::to_f64(v).unwrap_or(f64::NAN)
}

/// Criterion 11: Möbius inversion, `Σ_{x_j | x_i} Ψ(x_j) = 1/x_i`, on 1000
/// seeded random sets.
pub fn criterion_moebius_inversion(cfg: &Config) -> CriterionResult {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x0b);
    let mut ok = true;
    for _ in 0..1000 {
        let prime_count = 2 + rand::RngExt::random_range(&mut rng, 0..3usize);
        let set = sample::random_gcd_set(&mut rng, prime_count, 12);
        let psi = set.psi(1);
        let structure = set.structure();
        for i in 0..set.len() {
            let total: BigRational = structure
                .down_set(i)
                .iter()
                .map(|j| psi.values[j].clone())
                .sum();
            ok &= total == BigRational::new(BigInt::one(), set.element(i).clone());
        }
    }
    CriterionResult::new(
        "11",
        "Möbius inversion identity",
        ok,
        "1000 seeded sets".into(),
    )
}

/// The qualitative classification: of the thirteen filtered classes, exactly
/// the ten outside {9_K, 9_L, 9_M} admit singular realizations, witnessed by
/// the constructions plus the two catalog examples.
pub fn criterion_classification(_cfg: &Config) -> CriterionResult {
    let mut realized: Vec<ClassLabel> = construction_outcomes()
        .into_iter()
        .map(|(label, set)| {
            debug_assert!(set.is_singular().0);
            label
        })
        .collect();
    realized.push(classify9(&catalog::nine_i_example()).unwrap());
    realized.push(classify9(&catalog::nine_j_example()).unwrap());
    realized.sort();
    realized.dedup();
    let expected: Vec<ClassLabel> = construct::all_labels()
        .into_iter()
        .filter(|l| {
            ![ClassLabel::NineK, ClassLabel::NineL, ClassLabel::NineM].contains(l)
        })
        .collect();
    let ok = realized == expected;
    CriterionResult::new(
        "12",
        "ten realizable classes",
        ok,
        format!("{} classes realized singularly", realized.len()),
    )
}

/// Runs the whole suite in order.
pub fn run_all(cfg: &Config) -> Vec<CriterionResult> {
    vec![
        criterion_counts(cfg),
        criterion_special_filter(cfg),
        criterion_zero_tops(cfg),
        criterion_cube_search(cfg),
        criterion_determinant_oracle(cfg),
        criterion_constructions(cfg),
        criterion_sign_sweeps(cfg),
        criterion_sun_property(cfg),
        criterion_nonzero_guarantees(cfg),
        criterion_power_bracket(cfg),
        criterion_moebius_inversion(cfg),
        criterion_classification(cfg),
    ]
}

//! LCM and power-LCM matrices, their triangular factorization, and exact
//! determinants.
//!
//! Two independent determinant routes are kept side by side on purpose:
//! [`det_lcm`] multiplies the diagonal factorization out, while
//! [`det_bareiss`] runs fraction-free elimination on the raw matrix. Tests
//! cross-check one against the other.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::gcdset::GcdSet;

/// The power-LCM matrix: entry `(i, j)` is `lcm(x_i, x_j)^exponent`.
pub fn lcm_matrix(set: &GcdSet, exponent: u32) -> Vec<Vec<BigInt>> {
    lcm_matrix_of_values(set.elements(), exponent)
}

/// Power-LCM matrix of arbitrary positive integers; GCD closure is not
/// required for the matrix itself, only for the Ψ machinery.
pub fn lcm_matrix_of_values(values: &[BigInt], exponent: u32) -> Vec<Vec<BigInt>> {
    let n = values.len();
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for j in 0..=i {
            let l = values[i].lcm(&values[j]).pow(exponent);
            m[i][j] = l.clone();
            m[j][i] = l;
        }
    }
    m
}

/// The factorization of the power-LCM matrix into a unit triangular incidence
/// matrix `E`, the diagonal `Δ` of element powers and the diagonal `Λ` of Ψ
/// values: the matrix equals `(ΔE) Λ (ΔE)ᵀ`.
#[derive(Clone, Debug)]
pub struct IncidenceFactorization {
    /// Lower-triangular 0/1 incidence matrix with unit diagonal;
    /// `incidence[i][j] = 1` iff `x_j | x_i`.
    pub incidence: Vec<Vec<u8>>,
    /// Diagonal of `x_i^exponent`.
    pub delta: Vec<BigInt>,
    /// Diagonal of exact Ψ values.
    pub lambda: Vec<BigRational>,
    pub exponent: u32,
}

pub fn factorize(set: &GcdSet, exponent: u32) -> IncidenceFactorization {
    let n = set.len();
    let structure = set.structure();
    let incidence = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| u8::from(structure.leq(j, i)))
                .collect()
        })
        .collect();
    let delta = (0..n).map(|i| set.element(i).pow(exponent)).collect();
    let lambda = set.psi(exponent).values;
    IncidenceFactorization {
        incidence,
        delta,
        lambda,
        exponent,
    }
}

impl IncidenceFactorization {
    pub fn len(&self) -> usize {
        self.delta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.delta.is_empty()
    }

    /// Multiplies `(ΔE) Λ (ΔE)ᵀ` back out.
    pub fn reconstruct(&self) -> Vec<Vec<BigRational>> {
        let n = self.len();
        let mut out = vec![vec![BigRational::zero(); n]; n];
        for i in 0..n {
            for j in 0..=i {
                let mut acc = BigRational::zero();
                for k in 0..n {
                    if self.incidence[i][k] == 1 && self.incidence[j][k] == 1 {
                        acc += &self.lambda[k];
                    }
                }
                let scaled = acc
                    * BigRational::from(self.delta[i].clone())
                    * BigRational::from(self.delta[j].clone());
                out[i][j] = scaled.clone();
                out[j][i] = scaled;
            }
        }
        out
    }

    /// Entrywise comparison against the power-LCM matrix of `set`.
    pub fn verify(&self, set: &GcdSet) -> bool {
        let direct = lcm_matrix(set, self.exponent);
        let rebuilt = self.reconstruct();
        direct.iter().zip(&rebuilt).all(|(row_a, row_b)| {
            row_a
                .iter()
                .zip(row_b)
                .all(|(a, b)| b.is_integer() && b.numer() == a)
        })
    }
}

/// Exact determinant of the power-LCM matrix via the factorization:
/// the product of all `x_i^{2·exponent}` times the product of all Ψ values.
pub fn det_lcm(set: &GcdSet, exponent: u32) -> BigInt {
    let mut acc = BigRational::one();
    for x in set.elements() {
        acc *= BigRational::from(x.pow(2 * exponent));
    }
    for v in &set.psi(exponent).values {
        acc *= v;
    }
    assert!(
        acc.is_integer(),
        "determinant of an integer matrix must be an integer"
    );
    acc.to_integer()
}

/// Exact determinant by fraction-free (Bareiss) elimination. Independent of
/// the Ψ route; used as the cross-checking oracle.
pub fn det_bareiss(matrix: &[Vec<BigInt>]) -> BigInt {
    let n = matrix.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m: Vec<Vec<BigInt>> = matrix.to_vec();
    for row in &m {
        assert_eq!(row.len(), n, "matrix must be square");
    }
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                let (q, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero(), "Bareiss division is exact");
                m[i][j] = q;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gcdset::build_gcd_set;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn two_element_matrix() {
        let s = build_gcd_set([1u64, 2]).unwrap();
        let m = lcm_matrix(&s, 1);
        assert_eq!(m, vec![vec![big(1), big(2)], vec![big(2), big(2)]]);
        assert_eq!(det_lcm(&s, 1), big(-2));
        assert_eq!(det_bareiss(&m), big(-2));
    }

    #[test]
    fn diagonal_entries_are_element_powers() {
        let s = build_gcd_set([1u64, 3, 9, 45]).unwrap();
        let m = lcm_matrix(&s, 2);
        for (i, x) in s.elements().iter().enumerate() {
            assert_eq!(m[i][i], x.pow(2));
        }
    }

    #[test]
    fn singular_four_matrix_has_zero_determinant() {
        // not GCD closed, so only the raw matrix route applies
        let values = crate::catalog::non_closed_singular_4_values();
        assert_eq!(det_bareiss(&lcm_matrix_of_values(&values, 1)), BigInt::zero());
        // the closure is a valid set and both routes agree on it
        let closed = crate::catalog::closure_of_four();
        assert_eq!(det_lcm(&closed, 1), det_bareiss(&lcm_matrix(&closed, 1)));
        assert!(det_lcm(&closed, 1) != BigInt::zero());
    }

    #[test]
    fn factorization_reconstructs_exactly() {
        for elems in [vec![1u64], vec![1, 2], vec![1, 2, 3, 6], vec![1, 2, 3, 15, 42]] {
            let s = build_gcd_set(elems).unwrap();
            for e in [1u32, 2] {
                assert!(factorize(&s, e).verify(&s));
            }
        }
        let s8 = crate::catalog::singular_cube_8();
        assert!(factorize(&s8, 1).verify(&s8));
    }

    #[test]
    fn determinant_routes_agree() {
        for elems in [
            vec![1u64, 2, 3, 6],
            vec![1, 2, 4, 8, 16],
            vec![1, 2, 3, 15, 42],
            vec![1, 3, 5, 15, 45],
        ] {
            let s = build_gcd_set(elems).unwrap();
            for e in [1u32, 2, 3] {
                assert_eq!(det_lcm(&s, e), det_bareiss(&lcm_matrix(&s, e)));
            }
        }
    }

    #[test]
    fn bareiss_handles_zero_pivots() {
        // det [[0,1],[1,0]] = -1 needs the row swap
        let m = vec![vec![big(0), big(1)], vec![big(1), big(0)]];
        assert_eq!(det_bareiss(&m), big(-1));
        let z = vec![vec![big(0), big(0)], vec![big(0), big(5)]];
        assert_eq!(det_bareiss(&z), big(0));
    }
}

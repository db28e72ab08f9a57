//! Exact singularity certificates for LCM and power-LCM matrices on
//! GCD-closed sets, and the meet-semilattice combinatorics behind them.
//!
//! A set of positive integers that contains the gcd of every pair of its
//! members orders itself into a meet semilattice under divisibility. The LCM
//! matrix of such a set factors through that order, and its singularity is
//! decided exactly by the Ψ values computed here — no floating point is
//! involved anywhere a zero test matters.
//!
//! The crate provides:
//!
//! - [`poset`]: finite meet semilattices, Möbius functions, meet closures,
//!   widths and the double-chain property;
//! - [`canon`]: canonical forms and isomorphism tests;
//! - [`enumerate`]: exhaustive generation of semilattice structures up to
//!   isomorphism, with the special-structure filter;
//! - [`gcdset`]: GCD-closed integer sets, exact Ψ vectors and singularity
//!   verdicts;
//! - [`matrix`]: LCM matrices, their `(ΔE)Λ(ΔE)ᵀ` factorization and two
//!   independent exact determinant routes;
//! - [`construct`]: the nine-element insertion constructions, the
//!   thirteen-class classifier and cube-subsemilattice search;
//! - [`power`]: power-LCM constructions with certified root bracketing for a
//!   singular exponent beyond any requested bound;
//! - [`sample`]: seeded random generators for property sweeps;
//! - [`selfcheck`]: the end-to-end reproduction suite used by the CLI and the
//!   acceptance tests.

pub mod canon;
pub mod catalog;
pub mod construct;
pub mod dot;
pub mod enumerate;
pub mod files;
pub mod gcdset;
pub mod matrix;
pub mod poset;
pub mod power;
pub mod report;
pub mod sample;
pub mod selfcheck;

pub use canon::{canonical_form, is_isomorphic, CanonicalForm};
pub use gcdset::{build_gcd_set, gcd_closure, GcdSet, PsiVector, Rational};
pub use poset::{ElemSet, Structure};

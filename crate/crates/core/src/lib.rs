//! Exact invariants of homogeneous isolated complete intersection
//! singularities (ICIS) and instance-wise verification of Durfee-type
//! inequalities between the Milnor number `μ` and the geometric genus `p_g`.
//!
//! Everything here is exact: integers are [`Integer`] (arbitrary precision)
//! and fractions are [`Rational`]. There is no floating point in the crate.
//!
//! Module map:
//!
//! - [`arith`] and [`series`]: factorials, binomials, Stirling numbers and
//!   truncated power series over the rationals.
//! - [`multi_index`]: weak compositions `K_{n,r}` and their zero-count
//!   classes `K^s_{n,r}`.
//! - [`invariants`]: `μ` and `p_g` of a homogeneous ICIS, each by two
//!   independent formulas.
//! - [`coefficients`]: the bound coefficient `C_{n,r}`.
//! - [`means`]: class means `X^s`, `Y^s` and the combinatorial inequality.
//! - [`verifier`]: the headline checks and exhaustive sweeps.

pub mod arith;
pub mod coefficients;
pub mod error;
pub mod invariants;
pub mod means;
pub mod multi_index;
pub mod series;
pub mod verdict;
pub mod verifier;

pub use arith::{Integer, Rational};
pub use error::{Error, Result};
pub use invariants::{DegreeVector, InvariantRecord};
pub use multi_index::MultiIndex;
pub use verdict::{Claim, Outcome, Relation, Verdict};

//! Finite-dimensional associative algebras given by structure constants,
//! with exact machinery for the *endomorphic-left* elements
//! `L(A) = { a : a x a y = a x y  for all x, y }`, their right-handed
//! mirror, the nilpotent hierarchies they interact with, and the metric
//! geometry of `L(A)` as a subset of the normed algebra.
//!
//! The crate is organized bottom-up:
//!
//! - [`scalar`], [`linalg`]: exact fields (Q, GF(p)) and exact linear algebra;
//! - [`poly`], [`mpoly`], [`solve`]: uni/multivariate polynomials and a
//!   substitution solver for the small quadratic systems that cut out `L(A)`;
//! - [`algebra`]: the core [`algebra::Algebra`] type, structure-constant
//!   validation, unitalization, regular representations, builtin families;
//! - [`sets`], [`endo`], [`nilpotency`]: set descriptions, membership tests,
//!   and the structure theorems tying `L(A)` to nilpotents;
//! - [`classify`]: center, radical, and the without-order / nice / very-nice
//!   trichotomy;
//! - [`metric`]: induced norm, spectral radius, exact set distances,
//!   isolated points, and connected-component structure of `L(A)`;
//! - [`oracle`]: exhaustive GF(p) enumeration used to cross-check everything;
//! - [`io`], [`report`]: the `.alg` file format and analysis reports.

pub mod algebra;
pub mod charpoly;
pub mod classify;
pub mod endo;
pub mod error;
pub mod io;
pub mod linalg;
pub mod metric;
pub mod mpoly;
pub mod nilpotency;
pub mod oracle;
pub mod poly;
pub mod report;
pub mod scalar;
pub mod sets;
pub mod solve;

pub use error::AlgebraError;
pub use num::BigRational;
pub use scalar::{Field, PrimeField, Rationals, ScalarRegime};

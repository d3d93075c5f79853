//! Exact construction and verification of dynamical twists on
//! finite-dimensional Hopf algebras.
//!
//! Everything is computed over cyclotomic fields Q(zeta_N) with
//! arbitrary-precision rational coefficients, so every law the crate checks
//! — Hopf axioms, the dynamical-twist equations, stabilizer dimension
//! identities — is decided exactly, with zero tolerance.

pub mod algebra;
pub mod check;
pub mod error;
pub mod field;
pub mod linalg;
pub mod subspace;

pub use error::{Error, Result};
pub use field::{FieldElement, Rational};

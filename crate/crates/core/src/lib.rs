//! Exact computations around the weight-monodromy identity for local Galois
//! representation data, together with the tropical combinatorics of
//! hypercube formal models of tori and abeloids and of formal models of line
//! bundles on them.
//!
//! Everything here is exact rational arithmetic except the archimedean
//! modulus check in [`monodromy::weil_weight`], which runs at a fixed high
//! precision against a caller-supplied tolerance.

pub mod batch;
pub mod error;
pub mod monodromy;
pub mod rational;
pub mod ratlin;
pub mod tropbundle;
pub mod troplattice;

pub use error::{Error, Result};
pub use rational::Rational;

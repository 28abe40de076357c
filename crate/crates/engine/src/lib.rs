//! Exact homological algebra for two families of self-injective bound
//! quiver algebras.
//!
//! The engine builds the algebras, their minimal projective bimodule
//! resolutions, the induced Hochschild cochain complexes, and the cup
//! product structure on cohomology, and verifies computed values against
//! the expected tables bundled in `data/`. Everything is exact: linear
//! algebra runs over GF(p) or the rationals, and every verified quantity
//! is an integer or an identity in a small field.

pub mod exec;
pub mod field;
pub mod matrix;
pub mod util;

pub mod quiver;
pub mod algebra;
pub mod automorphism;
pub mod bimodule;
pub mod resolution;
pub mod simples;
pub mod cohomology;
pub mod expected;
pub mod periodicity;
pub mod ring;
pub mod gens;
pub mod report;
pub mod cache;
pub mod run;

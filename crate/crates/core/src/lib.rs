//! Exact-arithmetic workbench for pointed Hopf algebras of Cartan type.
//!
//! The library constructs braidings of diagonal type over finite abelian
//! groups, detects their Cartan type, computes root system data, measures
//! Nichols algebra dimensions with a quantum-symmetrizer rank oracle, and
//! verifies the dimensions of the lifted (linked) algebras by truncated
//! ideal elimination. All arithmetic is exact, over cyclotomic fields with
//! arbitrary-precision rational coefficients.

pub mod abelian;
pub mod braiding;
pub mod cli;
pub mod error;
pub mod exactfield;
pub mod freealg;
pub mod linking;
pub mod nichols;
pub mod rootsys;

pub use error::Error;

/// Result alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;

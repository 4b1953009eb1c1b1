//! Exact lattice algebra for complex tori and their symplectic pairs.
//!
//! A complex torus of dimension `g` is stored as the lattice `Z^{2g}`
//! together with a complex structure `J` on `R^{2g}` whose entries live in a
//! fixed real quadratic field `Q(sqrt(d))`. Everything downstream is exact:
//! homomorphism lattices are integer kernels, isogeny degrees are Smith
//! invariants, and every identity on `A x A^` is checked as an integer matrix
//! equation.
//!
//! The crate is `no_std` and only needs `alloc`.
//!
//! Layout:
//! - [`scalar`], [`matrix`], [`linalg`], [`snf`]: exact arithmetic substrate.
//! - [`torus`]: tori, duals, homomorphisms, isogenies.
//! - [`symplectic`]: the pair `A x A^`, block isomorphisms, symplectic tests,
//!   isotropic and Lagrangian sublattices, generators.
//! - [`endalg`], [`poly`], [`hilbert`]: endomorphism algebras and division
//!   verdicts.
//! - [`decomp`]: the beta-isogeny / gamma-isogeny / graph classification and
//!   kernel recipes.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod decomp;
pub mod endalg;
pub mod error;
pub mod hilbert;
pub mod linalg;
pub mod matrix;
pub mod poly;
pub mod scalar;
pub mod snf;
pub mod symplectic;
pub mod torus;

pub use error::{Error, Result};
pub use matrix::{IntMatrix, IntVector, Matrix, RatMatrix, ScalarMatrix};
pub use num_bigint::BigInt;
pub use num_rational::BigRational;
pub use scalar::Scalar;

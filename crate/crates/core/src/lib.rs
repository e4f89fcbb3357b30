//! Extended affine root systems over exact rationals: construction from
//! semilattice data, axiom checks, Weyl group orbits, minimal root sets and
//! presentation obstructions.

pub mod config;
pub mod ears;
pub mod error;
pub mod finite;
pub mod fixtures;
pub mod lattice;
pub mod linalg;
pub mod presentation;
pub mod report;
pub mod semilattice;
pub mod weyl;

pub use error::{Error, Result};
pub use linalg::{rat, ratio, AmbientSpace, BilinearForm, Rational, RationalMatrix, RationalVector};

//! Exact construction and verification of affine and elliptic root systems,
//! a constructive affine-base algorithm, and isotropic root multiplicities of
//! elliptic Lie algebras computed along marking lines.

pub mod affine_base;
pub mod core_lattice;
pub mod coset;
pub mod elliptic_core;
pub mod error;
pub mod finite_roots;
pub mod lie_calculus;
pub mod linalg;
pub mod marking_mult;

pub use error::{Error, Result};

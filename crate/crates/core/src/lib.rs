//! Exact computer algebra for invariant Einstein metrics on the quaternionic
//! Stiefel manifolds `Sp(n)/Sp(n-p)`.
//!
//! The crate builds the polynomial Einstein systems of two homogeneous
//! fibrations, eliminates them with Gröbner bases, isolates the real roots
//! with Sturm sequences and certifies every solution with interval
//! arithmetic.

pub mod algebra;
pub mod error;
pub mod geometry;
pub mod groebner;
pub mod interval;
pub mod proofs;
pub mod solver;
pub mod univar;

pub use error::{Error, Result};

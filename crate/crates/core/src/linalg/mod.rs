//! Exact linear algebra over the rationals.
//!
//! Column indices are opaque: callers enumerate their own canonical bases
//! and blocks, and this module only ranks, reduces and solves.

mod rational;
mod sparse;

pub use rational::{ParseRationalError, Rational};
pub use sparse::{
    echelonize, intersect, left_kernel, member, quotient_dim, rank, solve, Eliminator, LinalgError,
    SparseVector, SubspaceBasis, Tracked, TrackedEliminator,
};

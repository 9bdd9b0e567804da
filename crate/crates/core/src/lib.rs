//! Exact intersection theory on Grassmannians of planes in projective space.
//!
//! The crate computes the invariants attached to a triple `(n, d, kappa)`
//! (projective dimension, hypersurface degree, plane dimension): the excess
//! dimension, the intersection matrix `b`, the classes `a_i` on `P^n x P^n`,
//! the integer `m` that decides whether a general hypersurface has an
//! osculating plane through every point, and the normalized coefficients
//! `beta_i`. All arithmetic is exact.

pub mod error;
pub mod grchow;
pub mod motive;
pub mod ppchow;
pub mod report;
pub mod symcore;

pub use error::{Error, Result};

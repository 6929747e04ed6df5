//! Lower bounds for weighted quadratic integrals and sums
//! `<f, W f> = ∫ fᵀ(t) W f(t) dt` (or `Σ fᵀ(t) W f(t)`) as used in
//! stability analysis of time-delay systems.
//!
//! The crate covers the single-interval family (generalized free-matrix-based,
//! independent-functions, simplified and Bessel-based bounds), the two-interval
//! convexified bounds, executable versions of the constructions relating them,
//! and a verification driver that checks every bound against an exact oracle.

// `!(a < b)` rejects NaN too; block loops mirror the index notation
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod cli;
pub mod error;
pub mod function_spaces;
pub mod linalg;
pub mod single_interval;
pub mod two_interval;
pub mod verification;

pub use error::{Error, Result};

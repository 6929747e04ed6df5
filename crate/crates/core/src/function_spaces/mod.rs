//! Inner-product spaces over intervals and integer ranges, orthogonal bases,
//! exact moments and the brute-force energy oracle.
//!
//! Functions under test are vector-valued polynomials, so every inner product
//! is evaluated in closed form (monomial integration or finite summation).

mod basis;
mod moments;
mod poly;
mod space;

pub use basis::Basis;
pub use moments::{exact_energy, moments, split_moments, MomentVector, Segment};
pub use poly::{Polynomial, VectorPolynomial, MAX_DEGREE};
pub use space::{Space, SpaceKind};

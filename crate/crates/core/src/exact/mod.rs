//! Exact integer, rational and polynomial arithmetic.
//!
//! Geometry runs on `i64` coordinates with overflow checks enabled in every
//! build profile; coefficients of automorphisms live in a [`CoeffRing`]
//! (arbitrary-precision integers, rationals, integer polynomials or
//! residues).

mod matrix;
mod poly;
mod ring;
mod vector;

pub use matrix::{
    cofactor_normal, echelon_coordinates, hermite_normal_form, integer_kernel, lattice_basis, IntMatrix,
};
pub use poly::{IntPoly, Monomial};
pub use ring::{CoeffRing, RingMatrix, Zmod};
pub use vector::{ext_gcd, integral_section, primitive_part, IntVector};

pub type Int = num_bigint::BigInt;
pub type Rat = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("zero vector has no primitive part")]
    ZeroVector,
    #[error("vector {0} is not primitive")]
    NotPrimitive(IntVector),
    #[error("rows have different lengths")]
    Ragged,
    #[error("buffer of length {len} does not fit a {rows}x{cols} matrix")]
    ShapeMismatch { rows: usize, cols: usize, len: usize },
}

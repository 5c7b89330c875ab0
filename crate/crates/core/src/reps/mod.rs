//! Representations of link groups into `GL_N(ℤ)` or `GL_N(S⁻¹ℤ)`:
//! direct matrices, permutations, and total representations built from
//! Riley polynomials of 2-bridge knots and links.

mod parabolic;
mod representation;
mod riley;

pub use parabolic::{assign_pair, extend_assignment, parse_permutations};
pub use representation::{is_s_unit, prime_factors, propagate, Representation};
pub use riley::{
    riley_polynomial, riley_torus_recursion, symbolic_word_image, total_representation, ParabolicSeed,
    TwoBridgeData,
};

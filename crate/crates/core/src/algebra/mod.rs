//! Exact arithmetic: Laurent polynomials, integer and polynomial matrices,
//! Smith normal form and companion linearizations.

mod intmatrix;
mod laurent;
mod pencil;
mod polymatrix;

pub use intmatrix::{hermite_rows, smith_decomposition, smith_normal_form, IntMatrix, SmithDecomposition, SnfResult};
pub use laurent::LaurentPoly;
pub use pencil::{companion, linearize, Linearization};
pub use polymatrix::PolyMatrix;

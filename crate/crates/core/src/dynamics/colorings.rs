use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::Serialize;

use crate::algebra::{smith_normal_form, IntMatrix};
use crate::diagram::LinkDiagram;

/// The group of `ℤ/p` colorings modulo constant colorings, as cyclic factors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColoringGroup {
    pub modulus: u64,
    /// Orders of the nontrivial cyclic factors.
    pub factors: Vec<BigInt>,
    pub order: BigInt,
}

impl ColoringGroup {
    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }
}

/// Integer coloring matrix: one row `2·over − left − right` per crossing.
pub fn coloring_matrix(diagram: &LinkDiagram) -> IntMatrix {
    let mut m = IntMatrix::zeros(diagram.crossings.len(), diagram.arc_count);
    for (r, c) in diagram.crossings.iter().enumerate() {
        m[(r, c.over)] += BigInt::from(2);
        m[(r, c.left())] -= BigInt::one();
        m[(r, c.right())] -= BigInt::one();
    }
    m
}

/// Fox `p`-colorings of a diagram modulo the monochromatic ones.
pub fn fox_colorings(diagram: &LinkDiagram, p: u64) -> ColoringGroup {
    let snf = smith_normal_form(&coloring_matrix(diagram));
    let pb = BigInt::from(p);
    let mut factors: Vec<BigInt> =
        snf.invariant_factors.iter().map(|d| d.gcd(&pb)).filter(|g| !g.is_one()).collect();
    let free = diagram.arc_count - snf.rank;
    factors.extend(std::iter::repeat_n(pb, free.saturating_sub(1)));
    let order = factors.iter().product();
    ColoringGroup { modulus: p, factors, order }
}

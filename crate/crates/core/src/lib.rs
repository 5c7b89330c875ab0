//! Twisted Alexander invariants of knots and links.
//!
//! The pipeline runs from a diagram ([`diagram`]) through a representation
//! of the link group ([`reps`]) to the twisted module and its invariants
//! ([`twisted`]), and on to the dynamical quantities they control:
//! Mahler measures, torsion numbers of finite abelian covers and Fox
//! colorings ([`dynamics`]). Exact arithmetic lives in [`algebra`].

pub mod algebra;
pub mod corpus;
pub mod diagram;
pub mod dynamics;
pub mod error;
pub mod reps;
pub mod twisted;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/diagrams.md")]
    pub mod diagrams {}
    #[doc = include_str!("../../../book/src/algebra.md")]
    pub mod algebra {}
    #[doc = include_str!("../../../book/src/representations.md")]
    pub mod representations {}
    #[doc = include_str!("../../../book/src/twisted.md")]
    pub mod twisted {}
    #[doc = include_str!("../../../book/src/dynamics.md")]
    pub mod dynamics {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}

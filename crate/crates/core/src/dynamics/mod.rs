//! Mahler measures, torsion numbers of finite abelian covers and their
//! growth, and Fox colorings.

mod colorings;
mod lattice;
mod mahler;
mod torsion;

pub use colorings::{coloring_matrix, fox_colorings, ColoringGroup};
pub use lattice::Sublattice;
pub use mahler::{complex_roots, mahler_1var, mahler_multivar, mahler_multivar_strict, MahlerEstimate};
pub use torsion::{
    big_log, cyclic_resultant, expand_over_quotient, growth_sweep, periodic_point_components, torsion_number,
    GrowthEstimate, TorsionReport,
};

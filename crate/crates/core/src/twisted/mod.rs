//! Twisted Alexander modules and their invariants: the coloring
//! polynomial D, the Wada invariant W, the order of H₀ and the twisted
//! Alexander polynomial Δ, plus fibering and evaluation diagnostics.

mod invariants;
mod module;

pub use invariants::{
    coloring_polynomial, commutator_normal_generators, cyclotomic_test, denominator, evaluation_checks,
    fibering_report, h0_group, h0_order, pencil_indices, twisted_alexander, EvaluationReport, FiberingReport,
    InvariantBundle,
};
pub use module::{build_fox_presentation, build_presentation, TwistedModulePresentation};

use crate::diagram::{GroupPresentation, WirtingerPresentation};
use crate::error::Result;
use crate::reps::Representation;

/// Build the module from a Wirtinger presentation and compute all invariants.
pub fn analyze_wirtinger(
    pres: &WirtingerPresentation,
    rep: &Representation,
) -> Result<(TwistedModulePresentation, InvariantBundle)> {
    let tp = build_presentation(pres, rep)?;
    let bundle = twisted_alexander(&tp, &pres.generating_subset())?;
    Ok((tp, bundle))
}

/// Build the module from word relators by Fox calculus and compute all
/// invariants.
pub fn analyze_words(
    pres: &GroupPresentation,
    rep: &Representation,
) -> Result<(TwistedModulePresentation, InvariantBundle)> {
    let tp = build_fox_presentation(pres, rep)?;
    let all: Vec<usize> = (0..pres.generators).collect();
    let bundle = twisted_alexander(&tp, &all)?;
    Ok((tp, bundle))
}

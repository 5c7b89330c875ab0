//! Link diagrams from PD codes and braid words, and their Wirtinger
//! presentations.

mod braid;
mod pd;
mod presentation;

pub use braid::{braid_pd, parse_braid, parse_braid_word};
pub use pd::{parse_pd, Crossing, LinkDiagram};
pub use presentation::{wirtinger, GroupPresentation, Letter, WirtingerPresentation, WirtingerRelator, Word};

//! Built-in example diagrams and representation presets.

use crate::algebra::IntMatrix;
use crate::diagram::{parse_braid, parse_pd, GroupPresentation, LinkDiagram};
use crate::error::{Error, Result};
use crate::reps::TwoBridgeData;

/// How an example diagram is given.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiagramSource {
    Pd(&'static str),
    Braid { word: &'static str, strands: usize },
    Crossingless,
    /// Known only through a representation preset.
    Unavailable,
}

/// A named knot or link.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Example {
    pub name: &'static str,
    pub aliases: &'static [&'static str],
    pub source: DiagramSource,
    /// `(α, β)` when the example is 2-bridge.
    pub two_bridge: Option<(u64, u64)>,
}

impl Example {
    pub fn diagram(&self) -> Result<LinkDiagram> {
        match self.source {
            DiagramSource::Pd(pd) => parse_pd(pd),
            DiagramSource::Braid { word, strands } => parse_braid(word, strands),
            DiagramSource::Crossingless => Ok(LinkDiagram::unknot()),
            DiagramSource::Unavailable => Err(Error::DiagramUnavailable(self.name.to_string())),
        }
    }

    pub fn two_bridge_data(&self) -> Option<TwoBridgeData> {
        self.two_bridge.and_then(|(a, b)| TwoBridgeData::new(a, b).ok())
    }
}

pub const EXAMPLES: &[Example] = &[
    Example {
        name: "unknot",
        aliases: &["0_1"],
        source: DiagramSource::Crossingless,
        two_bridge: None,
    },
    Example {
        name: "trefoil",
        aliases: &["3_1"],
        source: DiagramSource::Pd("X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]"),
        two_bridge: Some((3, 1)),
    },
    Example {
        name: "figure-eight",
        aliases: &["4_1", "figure8"],
        source: DiagramSource::Pd("X[4,2,5,1],X[8,6,1,5],X[6,3,7,4],X[2,7,3,8]"),
        two_bridge: Some((5, 3)),
    },
    Example {
        name: "5_1",
        aliases: &["cinquefoil", "torus-5-2"],
        source: DiagramSource::Pd("X[1,6,2,7],X[3,8,4,9],X[5,10,6,1],X[7,2,8,3],X[9,4,10,5]"),
        two_bridge: Some((5, 1)),
    },
    Example {
        name: "5_2",
        aliases: &["three-twist"],
        source: DiagramSource::Pd("X[1,5,2,4],X[3,9,4,8],X[5,1,6,10],X[7,3,8,2],X[9,7,10,6]"),
        two_bridge: Some((7, 3)),
    },
    Example {
        name: "square",
        aliases: &["square-knot"],
        source: DiagramSource::Braid { word: "s1 s1 s1 S2 S2 S2", strands: 3 },
        two_bridge: None,
    },
    Example {
        name: "whitehead",
        aliases: &["5^2_1", "L5a1"],
        source: DiagramSource::Pd("X[6,1,7,2],X[10,7,5,8],X[4,5,1,6],X[2,10,3,9],X[8,4,9,3]"),
        two_bridge: Some((8, 3)),
    },
    Example {
        name: "riley",
        aliases: &["riley-knot"],
        source: DiagramSource::Unavailable,
        two_bridge: None,
    },
];

pub fn example(name: &str) -> Result<&'static Example> {
    let key = name.trim().to_ascii_lowercase();
    EXAMPLES
        .iter()
        .find(|e| e.name == key || e.aliases.contains(&key.as_str()))
        .ok_or_else(|| Error::UnknownExample(name.to_string()))
}

/// The square knot group `⟨x0, x1, x2 | x1x0x1 = x0x1x0, x2x0x2 = x0x2x0⟩`.
pub fn square_knot_presentation() -> GroupPresentation {
    GroupPresentation::parse(
        &["x0", "x1", "x2"],
        &[0, 0, 0],
        &["x1 x0 x1 = x0 x1 x0", "x2 x0 x2 = x0 x2 x0"],
    )
    .expect("fixed presentation")
}

/// Parabolic images for the square knot group with parameters `(u, v)`:
/// `x0 ↦ (1 1; 0 1)`, `x1 ↦ (1 0; −1 1)`, `x2 ↦ (1+uv v²; −u² 1−uv)`.
pub fn square_knot_images(u: i64, v: i64) -> Vec<IntMatrix> {
    vec![
        IntMatrix::from_rows(&[[1, 1], [0, 1]]),
        IntMatrix::from_rows(&[[1, 0], [-1, 1]]),
        IntMatrix::from_rows(&[[1 + u * v, v * v], [-u * u, 1 - u * v]]),
    ]
}

/// Riley's parabolic family for his four marked generators, at an integer
/// parameter `w`.
pub fn riley_knot_images(w: i64) -> Vec<IntMatrix> {
    vec![
        IntMatrix::from_rows(&[[1, 1], [0, 1]]),
        IntMatrix::from_rows(&[[1, 0], [-1, 1]]),
        IntMatrix::from_rows(&[[1 - w, w * w], [-1, w + 1]]),
        IntMatrix::from_rows(&[[1, 0], [-w * w, 1]]),
    ]
}

use thiserror::Error;

/// Every failure the toolkit can report.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("malformed PD code: {0}")]
    MalformedPd(String),
    #[error("inconsistent diagram: {0}")]
    InconsistentDiagram(String),
    #[error("malformed braid word: {0}")]
    MalformedBraid(String),
    #[error("braid generator s{index} out of range for {strands} strands")]
    GeneratorOutOfRange { index: usize, strands: usize },
    #[error("malformed polynomial: {0}")]
    MalformedPolynomial(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial is not univariate with nonnegative exponents")]
    NotUnivariate,
    #[error("exact division failed")]
    DivisionInexact,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("relator {index} is violated by the representation")]
    RelatorViolation { index: usize },
    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),
    #[error("not a two-bridge normal form: {0}")]
    NotTwoBridgeForm(String),
    #[error("parabolic seed is not monic")]
    NonMonicPhi,
    #[error("constant term {0} is not a unit; pass the primes dividing it as the ring")]
    NonUnitConstantTerm(String),
    #[error("seed does not divide the Riley polynomial")]
    SeedNotDivisor,
    #[error("operation requires a knot (one variable), got {0} variables")]
    NotAKnot(usize),
    #[error("coloring polynomial vanishes")]
    ZeroColoringPolynomial,
    #[error("tolerance {requested:e} not reached, best error estimate {achieved:e}")]
    ToleranceNotReached { requested: f64, achieved: f64 },
    #[error("invalid lattice: {0}")]
    InvalidLattice(String),
    #[error("no assignment of the seed matrices to diagram arcs satisfies every relator")]
    NoParabolicAssignment,
    #[error("no diagram is available for example {0:?}")]
    DiagramUnavailable(String),
    #[error("unknown example {0:?}")]
    UnknownExample(String),
    #[error("json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

use crate::graphs::BoundaryPair;
use crate::stability::Wall;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid (g, n) = ({g}, {n}): need n >= 1, and n >= 3 when g = 0")]
    InvalidGN { g: u32, n: usize },
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("pair {pair} is not admissible for (g, n) = ({g}, {n})")]
    InadmissiblePair { pair: BoundaryPair, g: u32, n: usize },
    #[error("edge {0} is a loop")]
    LoopEdge(usize),
    #[error("graph has loop-free circuit rank {0}, expected 0")]
    NotTreeLike(usize),
    #[error("graph mismatch: {0}")]
    GraphMismatch(String),
    #[error("degenerate parameter: {0}")]
    DegenerateParameter(Wall),
    #[error("degree vector sums to {found}, expected g - 1 = {expected}")]
    DegreeSumMismatch { expected: i64, found: i64 },
    #[error("expected {expected} entries, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("polarization is not ample: every vertex weight must be positive")]
    NonAmple,
    #[error("vertex subset must be proper and nonempty")]
    EmptyOrFullSubset,
    #[error("vertex subset must be nonempty")]
    EmptySubset,
    #[error("classes live over different (g, n): ({0}, {1}) vs ({2}, {3})")]
    BasisMismatch(u32, usize, u32, usize),
    #[error("degree vector has no negative entry")]
    NoNegativeDegree,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("malformed input: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;

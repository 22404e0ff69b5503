use thiserror::Error;

use crate::graph::VertexId;

/// Errors raised by the graph, word, orientation and verification layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {0} is not part of the graph")]
    UnknownVertex(VertexId),
    #[error("vertex {0} is declared more than once")]
    DuplicateVertex(VertexId),
    #[error("loop at vertex {0}")]
    Loop(VertexId),
    #[error("graph has {got} vertices, at most {max} are supported")]
    TooManyVertices { got: usize, max: usize },
    #[error("size limit exceeded: {0}")]
    SizeLimitExceeded(String),
    #[error("search space too large: {0}")]
    SearchSpaceTooLarge(String),
    #[error("digraph contains a directed cycle")]
    CyclicInput,
    #[error("letters must be distinct")]
    EqualLetters,
    #[error("word alphabet does not match the vertex set: {0}")]
    AlphabetMismatch(String),
    #[error("degenerate cylinder: m = {m}, n = {n} (need m >= 3, n >= 1)")]
    DegenerateSpec { m: usize, n: usize },
    #[error("triangulation has {got} cells, expected {expected}")]
    CellIndexMismatch { got: usize, expected: usize },
    #[error("cell ({0}, {1}) is not triangulated")]
    UntriangulatedCell(usize, usize),
    #[error("layer L{0} mixes cell types A and B")]
    MixedLayerType(usize),
    #[error("orientation O needs at least 4 sectors, got {0}")]
    SectorCountTooSmall(usize),
    #[error("coloring is not proper: {0} and {1} share a color")]
    ImproperColoring(VertexId, VertexId),
    #[error("coloring uses {0} classes, at most 3 allowed")]
    TooManyClasses(usize),
    #[error("unsupported combination: {0}")]
    UnsupportedCombination(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("labeling does not match the script: {0}")]
    LabelingMismatch(String),
    #[error("script step {index} is invalid: {reason}")]
    InvalidStep { index: usize, reason: String },
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

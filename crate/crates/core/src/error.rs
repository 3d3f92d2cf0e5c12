use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty point set")]
    EmptyPointSet,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("degenerate spanning set: need {expected} affinely independent points")]
    DegenerateSpanningSet { expected: usize },

    #[error("zero normal vector does not define a hyperplane")]
    ZeroNormal,

    #[error("degenerate polytope: affine hull has dimension {hull_dim} < {dim}")]
    DegeneratePolytope { hull_dim: usize, dim: usize },

    #[error("non-vertex input point at index {0}")]
    NonVertex(usize),

    #[error("subset enumeration too large: {count} candidates exceeds the bound {bound}")]
    TooManySubsets { count: u128, bound: u128 },

    #[error("unknown vertex index {index} (vertex count {count})")]
    UnknownVertex { index: usize, count: usize },

    #[error("Menger undefined for adjacent pair ({0}, {1})")]
    AdjacentPair(usize, usize),

    #[error("identical endpoints {0}")]
    SameEndpoint(usize),

    #[error("removal empties the graph")]
    EmptiesGraph,

    #[error("graph needs at least {needed} vertices, has {found}")]
    GraphTooSmall { needed: usize, found: usize },

    #[error("invalid edge ({0}, {1})")]
    InvalidEdge(usize, usize),

    #[error("theorem clause requires d >= 3, polytope has d = {0}")]
    LinkClauseDimension(usize),

    #[error("empty-simplex separator check requires a simplicial polytope of dimension >= 2")]
    NotSimplicial,

    #[error("only d-separators carry this guarantee: |X| = {size}, d = {dim}")]
    WrongSeparatorSize { size: usize, dim: usize },

    #[error("degenerate: not full-dimensional (hyperplane contains every vertex)")]
    HyperplaneContainsAll,

    #[error("invalid catalog spec: {0}")]
    InvalidSpec(String),

    #[error("could not realize polytope after {0} consecutive rejections")]
    CouldNotRealize(usize),
}

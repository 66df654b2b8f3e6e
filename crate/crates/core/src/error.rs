use thiserror::Error;

/// Errors reported by construction and query operations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("a bipyramid base needs at least 3 vertices (got n = {0})")]
    BaseTooSmall(usize),

    #[error("consecutive base paths are only defined for n >= 4 (got n = {0})")]
    PathsUndefined(usize),

    #[error("the closed form n/(n-2) applies only for n >= 4 (got n = {0})")]
    ClosedFormUndefined(usize),

    #[error("vertex {vertex} out of range (complex has {limit} vertices)")]
    VertexOutOfRange { vertex: usize, limit: usize },

    #[error("a complex needs at least one facet")]
    NoFacets,

    #[error("facet {{{0}}} is contained in another facet")]
    NonMaximalFacet(String),

    #[error("vertex {0} does not belong to any facet")]
    UncoveredVertex(usize),

    #[error("non-face search cap {0} binds: a minimal non-face of the next size exists")]
    NonfaceCapBinds(usize),

    #[error("the zero ideal (no generators) is not supported")]
    ZeroIdeal,

    #[error("the unit ideal (a generator with empty support) is not supported")]
    UnitIdeal,

    #[error("variable counts disagree (expected {expected}, got {got})")]
    VariableMismatch { expected: usize, got: usize },

    #[error("symbolic power exponent must be >= 1")]
    InvalidMultiplicity,

    #[error("no monomial up to degree {0} is a member; the degree cap is too small")]
    DegreeCapExhausted(u64),

    #[error("coefficient vector has wrong length (expected {expected}, got {got})")]
    ShapeMismatch { expected: usize, got: usize },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

//! Finite relational structures: plane trees, plane c-trees, colored plane
//! forests, simple graphs, A-interval graphs and path decompositions.

mod forest;
mod graph;
pub mod io;
mod tree;

use thiserror::Error;

pub use forest::ColoredPlaneForest;
pub use graph::{AIntervalGraph, IntervalVertex, PathDecomposition, SimpleGraph};
pub use tree::{NodeId, PlaneCTree, PlaneTree};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("structure has no nodes")]
    Empty,
    #[error("node {0} out of range")]
    NodeOutOfRange(usize),
    #[error("cycle in parent links through node {0}")]
    Cycle(usize),
    #[error("node {0} appears in more than one child list")]
    DuplicateChild(usize),
    #[error("more than one root: {0} and {1}")]
    MultipleRoots(usize, usize),
    #[error("duplicate id {0}")]
    DuplicateId(usize),
    #[error("constants not injective (c_{0} at node {1})")]
    ConstantsNotInjective(u32, usize),
    #[error("constant indices start at 1")]
    BadConstantIndex,
    #[error("expected {expected} color entries, got {got}")]
    ColorCount { expected: usize, got: usize },
    #[error("color {color} outside palette of size {palette}")]
    ColorOutOfPalette { color: u32, palette: u32 },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("parallel edge {0}-{1}")]
    ParallelEdge(usize, usize),
    #[error("interval of vertex {0} is empty")]
    EmptyInterval(u32),
    #[error("intersecting intervals share color (vertices {0} and {1})")]
    SameColorIntersect(u32, u32),
    #[error("edge between disjoint intervals (vertices {0} and {1})")]
    EdgeBetweenDisjoint(u32, u32),
    #[error("vertex {0} occurs in a non-contiguous run of bags")]
    NonContiguousBag(usize),
    #[error("vertex {0} occurs in no bag")]
    VertexNotCovered(usize),
    #[error("edge {0}-{1} is contained in no bag")]
    EdgeNotCovered(usize, usize),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

impl From<crate::sexp::SexpError> for StructureError {
    fn from(e: crate::sexp::SexpError) -> Self {
        StructureError::Parse { pos: e.pos, msg: e.msg }
    }
}

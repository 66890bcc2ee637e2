use thiserror::Error;

use crate::graph::{EdgeId, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate edge a{a}-b{b}")]
    DuplicateEdge { a: usize, b: usize },
    #[error("{what} index {index} out of range (limit {limit})")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        limit: usize,
    },
    #[error("negative capacity {cap} on vertex {vertex}")]
    NegativeCapacity { vertex: VertexId, cap: i64 },
    #[error("expected {expected} capacities, got {got}")]
    CapacityCount { expected: usize, got: usize },
    #[error("unknown vertex name {0:?}")]
    UnknownVertexName(String),
    #[error("unknown edge id {0}")]
    UnknownEdgeId(EdgeId),
    #[error("edge set is not a b-matching (vertex {vertex} has load {load} > {cap})")]
    NotABMatching {
        vertex: VertexId,
        load: u64,
        cap: u64,
    },
    #[error("matching of size {size} is not maximum (certificate cost {cost})")]
    NotMaximumMatching { size: u64, cost: u64 },
    #[error("unknown component {0}")]
    UnknownComponent(usize),
    #[error("decomposition does not belong to this graph: {0}")]
    InconsistentDecomposition(String),
    #[error("not a complementary pair of ideals: {0}")]
    NotAnIdeal(String),
    #[error("ideal pair is not normalized: component {0} is on the wrong side")]
    NotNormalized(usize),
    #[error("vertex set is not verifying (cost {cost}, maximum {max})")]
    NotVerifying { cost: u64, max: u64 },
    #[error("vertex set splits component {0} across both color classes")]
    MalformedSet(usize),
    #[error("vertex set has {got} slots, graph has {expected} vertices")]
    VertexSetSize { expected: usize, got: usize },
    #[error("enumeration cap must be positive")]
    ZeroCap,
    #[error("instance too large for the oracle ({what} = {got} > {limit})")]
    TooLarge {
        what: &'static str,
        got: usize,
        limit: usize,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

use crate::gammac::{ParseError, ValidationReport};
use crate::graph::{EdgeId, NodeId};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("invalid graph: {0}")]
    Invalid(ValidationReport),

    #[error("node {0} does not exist")]
    UnknownNode(NodeId),

    #[error("vertex {vertex} has no self-intersection")]
    MissingSelfIntersection { vertex: NodeId },

    #[error(
        "inconsistent multiplicities at vertex {vertex}: adjacent sum {adjacent} is not divisible by multiplicity {multiplicity}"
    )]
    InconsistentMultiplicities {
        vertex: NodeId,
        adjacent: i64,
        multiplicity: i64,
    },

    #[error("not a plane-curve graph: {0}")]
    NotPlaneCurveGraph(String),

    #[error("graph is not a tree")]
    NotATree,

    #[error("unknown export format `{0}` (expected `dot` or `json`)")]
    UnknownFormat(String),

    #[error("{0} is an arrowhead and has no star")]
    ArrowheadStar(NodeId),

    #[error("invalid string parameters: {0}")]
    InvalidStringSpec(String),

    #[error("invalid covering data: {0}")]
    InvalidCoveringData(String),

    #[error("k = {k} is below the positivity bound k_min = {k_min} (use force to override)")]
    InadmissibleK { k: i64, k_min: i64 },

    #[error("inadmissible (graph, k): {0}")]
    Inadmissible(String),

    #[error(
        "string over edge {edge} ends with multiplicity {found} but the attached vertex has {expected}"
    )]
    ChainEndMismatch {
        edge: EdgeId,
        expected: i64,
        found: i64,
    },

    #[error("transversal reconstruction failed: {0}")]
    Transversal(String),

    #[error("unknown fixture `{name}` (known: {known})")]
    UnknownFixture { name: String, known: String },

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("input not a valid graph/k pair: {0}")]
    NotNegativeDefinite(String),
}

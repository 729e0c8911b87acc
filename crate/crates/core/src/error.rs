use crate::graph::VertexId;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {0} is not present in the graph")]
    VertexNotFound(VertexId),
    #[error("vertex {0} is already present in the graph")]
    DuplicateVertex(VertexId),
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(VertexId, VertexId),
    #[error("unrecognised vertex label {0:?}")]
    InvalidLabel(String),
    #[error("malformed JSON: {0}")]
    Json(String),

    #[error("k0 = {k0} is not a neighbor of measured vertex {target}")]
    InvalidSpecialNeighbor { target: VertexId, k0: VertexId },
    #[error("X measurement of vertex {0} requires a neighbor k0")]
    MissingSpecialNeighbor(VertexId),
    #[error("k0 is only meaningful for an X measurement of a vertex with neighbors (target {0})")]
    UnexpectedSpecialNeighbor(VertexId),
    #[error("step {index}: {source}")]
    Step {
        index: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("graphs have different vertex counts ({left} vs {right})")]
    SizeMismatch { left: usize, right: usize },
    #[error("LC orbit search explored more than {bound} graphs")]
    OrbitBoundExceeded { bound: usize },
    #[error("{count} vertices exceeds the limit of {limit} for this operation")]
    TooManyVertices { count: usize, limit: usize },

    #[error("a multi-star needs at least one switch")]
    EmptySpec,
    #[error("operation requires an odd switch count, got {0}")]
    EvenSwitchCount(usize),
    #[error("operation requires an even switch count, got {0}")]
    OddSwitchCount(usize),
    #[error("topology mismatch: expected {expected}, found {found}")]
    TopologyMismatch { expected: String, found: String },
    #[error("protocol invariant violated: {0}")]
    ProtocolInvariantViolation(String),
    #[error("removal set {0:?} is not a valid choice")]
    InvalidRemovalSet(Vec<usize>),
    #[error("exhaustive search for m = {m} exceeds the bound m <= {limit}")]
    SearchBoundExceeded { m: usize, limit: usize },

    #[error("qubit {index} out of range for a {n}-qubit tableau")]
    QubitOutOfRange { index: usize, n: usize },
    #[error("invalid tableau: {0}")]
    InvalidTableau(String),
    #[error("post-selected +1 outcome has zero probability")]
    ZeroProbabilityOutcome,
}

impl Error {
    pub(crate) fn at_step(self, index: usize) -> Self {
        Error::Step {
            index,
            source: Box::new(self),
        }
    }

    /// Short machine-readable name of the error variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::VertexNotFound(_) => "VertexNotFound",
            Error::DuplicateVertex(_) => "DuplicateVertex",
            Error::SelfLoop(_) => "SelfLoop",
            Error::DuplicateEdge(..) => "DuplicateEdge",
            Error::InvalidLabel(_) => "InvalidLabel",
            Error::Json(_) => "Json",
            Error::InvalidSpecialNeighbor { .. } => "InvalidSpecialNeighbor",
            Error::MissingSpecialNeighbor(_) => "MissingSpecialNeighbor",
            Error::UnexpectedSpecialNeighbor(_) => "UnexpectedSpecialNeighbor",
            Error::Step { .. } => "StepFailed",
            Error::SizeMismatch { .. } => "SizeMismatch",
            Error::OrbitBoundExceeded { .. } => "OrbitBoundExceeded",
            Error::TooManyVertices { .. } => "TooManyVertices",
            Error::EmptySpec => "EmptySpec",
            Error::EvenSwitchCount(_) => "EvenSwitchCount",
            Error::OddSwitchCount(_) => "OddSwitchCount",
            Error::TopologyMismatch { .. } => "TopologyMismatch",
            Error::ProtocolInvariantViolation(_) => "ProtocolInvariantViolation",
            Error::InvalidRemovalSet(_) => "InvalidRemovalSet",
            Error::SearchBoundExceeded { .. } => "SearchBoundExceeded",
            Error::QubitOutOfRange { .. } => "QubitOutOfRange",
            Error::InvalidTableau(_) => "InvalidTableau",
            Error::ZeroProbabilityOutcome => "ZeroProbabilityOutcome",
        }
    }
}

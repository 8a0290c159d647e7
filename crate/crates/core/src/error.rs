use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("malformed graph6: {0}")]
    Graph6(String),

    #[error("malformed edge list: {0}")]
    EdgeList(String),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("factor must have at least {min} vertices, got {got}")]
    TrivialFactor { min: usize, got: usize },

    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },

    #[error("unknown name `{0}`")]
    UnknownName(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("script op {index} ({op}) is invalid: {reason}")]
    InvalidScript { index: usize, op: String, reason: String },

    #[error("undecided: budget exhausted after {nodes} search nodes")]
    Undecided { nodes: u64 },

    #[error("graph too large for this operation: {0}")]
    TooLarge(String),

    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("json: {0}")]
    Json(String),
}

impl Error {
    pub fn is_undecided(&self) -> bool {
        matches!(self, Error::Undecided { .. })
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

use thiserror::Error;

/// Errors produced anywhere in the pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("no events")]
    NoEvents,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unknown exemplar `{0}`")]
    UnknownExemplar(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("no edge between vertices {0} and {1}")]
    MissingEdge(usize, usize),
    #[error("edge weight must stay positive, got {0}")]
    NonPositiveWeight(f64),
    #[error("requested {requested} edges but at most {max} fit on {n} vertices")]
    TooManyEdges { n: usize, requested: usize, max: usize },
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("non-finite entry at ({0}, {1})")]
    NonFinite(usize, usize),
    #[error("cap value {cap} is below finite death {death}")]
    CapBelowDeath { cap: f64, death: f64 },
    #[error("k = {k} exceeds the {available} full segments")]
    TooManyClusters { k: usize, available: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

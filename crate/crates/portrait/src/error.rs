use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("invalid portrait: {0}")]
    InvalidPortrait(String),

    #[error("invalid edge data: {0}")]
    InvalidEdgeData(String),

    #[error("alpha value overflow at `{0}`")]
    AlphaOverflow(String),

    #[error("json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} is outside 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("cycle needs at least 3 vertices, got {0}")]
    CycleTooShort(usize),
    #[error("{op} supports at most {max} vertices, got {n}")]
    TooManyVertices { op: &'static str, n: usize, max: usize },
    #[error("action {action} needs label memory, which {model} does not provide")]
    InvalidActionForModel { action: String, model: String },
    #[error("step {t}: modify requested but the fired action {action} is not a label join")]
    ModifyUnsupported { t: usize, action: String },
    #[error("fading memory is only defined for L = 2, got L = {0}")]
    UnsupportedFadingLength(usize),
    #[error("choice sequence has length {got}, instruction string has length {expected}")]
    ChoiceLengthMismatch { expected: usize, got: usize },
    #[error("model {0} is not handled here")]
    WrongModel(String),
    #[error("not a tree: {0}")]
    NotATree(String),
    #[error("parent of vertex {t} is {parent}, must lie in 1..{t}")]
    InvalidParent { t: usize, parent: usize },
    #[error("Pruefer entry {entry} outside 1..={n}")]
    PrueferEntryOutOfRange { entry: usize, n: usize },
    #[error("probability must lie in [0, 1]: {0}")]
    InvalidProbability(String),
    #[error("parse error: {0}")]
    Parse(String),
}

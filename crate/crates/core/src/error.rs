use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("linear system is inconsistent")]
    Inconsistent,

    #[error("structural failure: {0}")]
    Structural(String),

    #[error("algebra is not semisimple: radical of dimension {0} detected")]
    NotSemisimple(usize),

    #[error("{0}; splitting requires a field extension beyond Q(i, √3), rerun with --mode float")]
    NeedsFieldExtension(String),

    #[error("invalid group table: {0}")]
    InvalidGroup(String),

    #[error("precondition `{name}` failed: {detail}")]
    Precondition { name: &'static str, detail: String },

    #[error("convolution tag mismatch: {0}")]
    TagMismatch(String),

    #[error("parse error at {context}: {message}")]
    Parse { context: String, message: String },

    #[error("materialization cap exceeded: total dimension {dim} > cap {cap}")]
    CapExceeded { dim: usize, cap: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn structural(msg: impl Into<String>) -> Self {
        Error::Structural(msg.into())
    }

    pub(crate) fn shape(msg: impl Into<String>) -> Self {
        Error::Shape(msg.into())
    }
}

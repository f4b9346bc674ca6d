use thiserror::Error;

/// Errors produced by the library.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("relations imply a cycle through `{0}`")]
    Cycle(String),
    #[error("marking is not order-preserving: {0} < {1} but λ({0}) > λ({1})")]
    MarkingNotOrderPreserving(String, String),
    #[error("({0}, {1}) is not a covering relation")]
    NotACover(String, String),
    #[error("marked poset is not strict; run strictify first")]
    NotStrict,
    #[error("partition is not (P,λ)-compatible")]
    NotCompatible,
    #[error("point is not in the polyhedron")]
    NotInPolyhedron,
    #[error("partition is not a face partition")]
    NotAFacePartition,
    #[error("polyhedron is not pointed: component of `{0}` has no marked element")]
    NotPointed(String),
    #[error("marking is empty")]
    EmptyMarking,
    #[error("instance too large: {actual} exceeds the limit {limit}")]
    SizeLimit { actual: usize, limit: usize },
    #[error("oracle cross-validation found a mismatch")]
    OracleMismatch,
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
}

impl Error {
    pub fn parse(line: usize, col: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            col,
            msg: msg.into(),
        }
    }

    /// Exit code convention: parse errors are distinguished from domain errors.
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

use crate::map::{DartId, Label};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("gauss code: {0}")]
    MalformedCode(String),
    #[error("gauss code has no spherical embedding")]
    NotRealizable,
    #[error("gauss code too large for exhaustive realization ({0} crossings)")]
    TooLarge(usize),
    #[error("invalid dart table: {0}")]
    InvalidMap(String),
    #[error("no face with id {0}")]
    NoSuchFace(usize),
    #[error("no dart with id {0}")]
    NoSuchDart(DartId),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

impl ParseError {
    pub(crate) fn at(line: usize, msg: impl Into<String>) -> Self {
        ParseError::Syntax { line, msg: msg.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("malformed braid word: {0}")]
    MalformedBraid(String),
    #[error("braid closure has {0} components, expected a knot")]
    NotAKnot(usize),
    #[error("crossing {0} has no over/under information")]
    MissingCrossing(Label),
    #[error(transparent)]
    Map(#[from] MapError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("inapplicable move: {0}")]
    Inapplicable(String),
    #[error("move {index} failed: {source}")]
    Script {
        index: usize,
        #[source]
        source: Box<MoveError>,
    },
}

impl MoveError {
    pub(crate) fn inapplicable(msg: impl Into<String>) -> Self {
        MoveError::Inapplicable(msg.into())
    }

    /// Index of the failing move when the error comes from a script run.
    pub fn script_index(&self) -> Option<usize> {
        match self {
            MoveError::Script { index, .. } => Some(*index),
            MoveError::Inapplicable(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("reduction search exhausted its budget of {budget} states")]
    ReductionFailed { budget: usize },
    #[error("script does not certify minimality; offending moves {offending:?}")]
    InvalidCertificate { offending: Vec<usize> },
    #[error(transparent)]
    Move(#[from] MoveError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("family parameter n = {0} is below the minimum {1}")]
    OutOfRange(usize, usize),
    #[error("no unknotting script found for n = {0}")]
    ScriptSearchFailed(usize),
    #[error("{component} check failed: {detail}")]
    CheckFailed { component: &'static str, detail: String },
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Move(#[from] MoveError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
}

use thiserror::Error;

/// Broad error classes, used by the CLI to pick an exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Parse,
    Validation,
    Resource,
    Internal,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at line {line}, column {col}: {message}")]
    Parse {
        line: usize,
        col: usize,
        message: String,
    },

    #[error("malformed table: {0}")]
    MalformedGrid(String),
    #[error("axiom A0 fails: row {0} is not a bijection")]
    NotABijection(usize),
    #[error("axiom A1 fails: self-distributivity fails at (x, y, z) = ({0}, {1}, {2})")]
    SelfDistributivityFails(usize, usize, usize),
    #[error("rack is not a quandle (x ▷ x != x at x = {0})")]
    NotAQuandle(usize),
    #[error("subgroup element {h} does not commute with {s}")]
    NotCentralizing { s: String, h: String },
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
    #[error("generating set does not generate the group")]
    NotGenerating,
    #[error("conjugation closure of the set does not generate the group")]
    NotNormallyGenerating,
    #[error("map is not a rack automorphism: {0}")]
    NotAnAutomorphism(String),
    #[error("elements {0} and {1} lie in different components")]
    DifferentComponents(String, String),
    #[error("cochain is not a cocycle")]
    NotACocycle,
    #[error("pulled-back function is nonzero on the degenerate component tuple {0:?}")]
    DegenerateValueNonzero(Vec<usize>),
    #[error("linear system has no solution")]
    NoSolution,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("group exceeds the enumeration cap of {cap} elements")]
    GroupTooLarge { cap: usize },
    #[error("degree {degree} too large: {cells} cochain cells exceed the cap of {cap}")]
    DegreeTooLarge {
        degree: usize,
        cells: usize,
        cap: usize,
    },
    #[error("search cap exceeded: {0}")]
    CapExceeded(String),
    #[error("isomorphism search limited to {limit} elements")]
    IsoSearchTooLarge { limit: usize },

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        use Error::*;
        match self {
            Parse { .. } => ErrorClass::Parse,
            GroupTooLarge { .. }
            | DegreeTooLarge { .. }
            | CapExceeded(_)
            | IsoSearchTooLarge { .. } => ErrorClass::Resource,
            Internal(_) => ErrorClass::Internal,
            _ => ErrorClass::Validation,
        }
    }

    pub(crate) fn parse(line: usize, col: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            col,
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

use thiserror::Error;

/// Location of a problem in a text input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Location {
    pub line: usize,
    pub token: String,
}

impl std::fmt::Display for Location {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}, token `{}`", self.line, self.token)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at {at}: {msg}")]
    Parse { at: Location, msg: String },

    #[error("malformed table: cell ({row}, {col}) holds {value}, expected 1..={order}")]
    MalformedTable {
        row: usize,
        col: usize,
        value: usize,
        order: usize,
    },

    #[error("invalid parameters: {0} fails")]
    InvalidParameters(String),

    #[error("not a group: {0}")]
    InvalidGroup(String),

    #[error("invalid diagram: {}", .0.join("; "))]
    InvalidDiagram(Vec<String>),

    #[error("node {0} is not a classical crossing")]
    NotClassical(usize),

    #[error("node index {0} out of range")]
    NoSuchNode(usize),

    #[error("diagram has {0} naive components; merge them first (see moves::merge_components)")]
    MustMerge(usize),

    #[error("diagram has free loops, which a Gauss word cannot record")]
    FreeLoops,

    #[error("malformed Gauss word at token {index}: {msg}")]
    MalformedGauss { index: usize, msg: String },

    #[error("unknown move `{0}`")]
    UnknownMove(String),

    #[error("stale move site: {0}")]
    StaleSite(String),

    #[error("bad detour path: {0}")]
    BadDetour(String),

    #[error("cannot merge naive components: {0}")]
    CannotMerge(String),
}

pub type Result<T> = std::result::Result<T, Error>;

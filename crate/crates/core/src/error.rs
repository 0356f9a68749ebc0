use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} is out of range for a graph on {n} vertices")]
    InvalidVertex { vertex: usize, n: usize },

    #[error("invalid edge {u}-{v}: {reason}")]
    InvalidEdge { u: usize, v: usize, reason: &'static str },

    #[error("not a valid walk: {0}")]
    InvalidWalk(String),

    #[error("sequences cannot be joined: {0}")]
    NotComposable(String),

    #[error("vertex {0} does not lie on the cycle")]
    NotOnCycle(usize),

    #[error("graph has no cycle")]
    NoCycle,

    #[error("size limit exceeded for {what}: {got} > {limit}")]
    SizeLimit {
        what: &'static str,
        limit: usize,
        got: usize,
    },

    #[error("graph is not chordal")]
    NotChordal,

    #[error("graph is disconnected")]
    Disconnected,

    #[error("invalid tree decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("unknown name '{0}'")]
    UnknownName(String),

    #[error("generator gave up after {attempts} attempts (seed {seed})")]
    RetryBudget { attempts: usize, seed: u64 },
}

impl Error {
    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}

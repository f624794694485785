use std::fmt;

use crate::graph::Vertex;

/// Where an offending edge came from: its index in an edge list, or a line
/// of an input file.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Site {
    Pair(usize),
    Line(usize),
}

impl fmt::Display for Site {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Site::Pair(i) => write!(f, "edge #{}", i + 1),
            Site::Line(l) => write!(f, "line {}", l),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("loop edge ({u},{u}) at {site}")]
    LoopEdge { u: Vertex, site: Site },
    #[error("duplicate edge ({u},{v}) at {site}")]
    DuplicateEdge { u: Vertex, v: Vertex, site: Site },
    #[error("endpoint out of range in ({u},{v}) at {site}: vertices are 1..={n}")]
    EndpointOutOfRange {
        u: Vertex,
        v: Vertex,
        n: usize,
        site: Site,
    },
    #[error("arrangement does not match graph: {0}")]
    ArrangementMismatch(String),
    #[error("graph is disconnected ({components} components)")]
    Disconnected { components: usize },
    #[error("({0},{1}) is not a bridge")]
    NotABridge(Vertex, Vertex),
    #[error("graph is not a tree")]
    NotATree,
    #[error("kernel record does not match arrangement: {0}")]
    RecordMismatch(String),
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),
    #[error("graph too large for this oracle: n = {n}, cap = {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unknown instance family `{0}`")]
    UnknownFamily(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Rewrites the site of an edge-construction error, used when an edge list
    /// was read from a file.
    pub(crate) fn at_site(self, map: impl Fn(usize) -> Site) -> Self {
        let remap = |site: Site| match site {
            Site::Pair(i) => map(i),
            s => s,
        };
        match self {
            Error::LoopEdge { u, site } => Error::LoopEdge { u, site: remap(site) },
            Error::DuplicateEdge { u, v, site } => Error::DuplicateEdge {
                u,
                v,
                site: remap(site),
            },
            Error::EndpointOutOfRange { u, v, n, site } => Error::EndpointOutOfRange {
                u,
                v,
                n,
                site: remap(site),
            },
            other => other,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

use crate::graph::ObjectRef;
use thiserror::Error;

/// Errors surfaced by graph construction, game engines, strategies, and the lab.
#[derive(Debug, Error)]
pub enum Error {
    #[error("graph6 parse error at byte {offset}: {msg}")]
    Graph6 { offset: usize, msg: String },

    #[error("object cap exceeded: {objects} objects (n + m) > cap {cap}")]
    CapExceeded { objects: usize, cap: u32 },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("unknown graph family `{0}`")]
    UnknownFamily(String),

    #[error("bad generator spec `{spec}`: {msg}")]
    BadGeneratorSpec { spec: String, msg: String },

    #[error("illegal mark: {object} is already marked")]
    AlreadyMarked { object: ObjectRef },

    #[error("illegal move: {object} is already colored")]
    AlreadyColored { object: ObjectRef },

    #[error("illegal color {color} on {object}: conflicts with neighbor {conflict}")]
    ColorConflict {
        object: ObjectRef,
        color: u8,
        conflict: ObjectRef,
    },

    #[error("no such object: flat index {0} out of range")]
    NoSuchObject(u32),

    #[error("orientation does not match graph: {0}")]
    OrientationMismatch(String),

    #[error("strategy precondition violated: {0}")]
    StrategyPrecondition(String),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("bad corpus spec `{spec}`: {msg}")]
    BadCorpusSpec { spec: String, msg: String },

    #[error("cache schema mismatch: {0}")]
    CacheSchema(String),

    #[error("bad trace file: {0}")]
    BadTrace(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

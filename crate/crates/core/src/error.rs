use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong while reading, building or querying an index.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: malformed token {token:?}")]
    Parse { line: usize, token: String },

    #[error("line {line}: node {label} occurs more than once in the same edge")]
    DuplicateNode { line: usize, label: u64 },

    #[error("line {line}: edge has no nodes")]
    EmptyEdge { line: usize },

    #[error("invalid hypergraph: {0}")]
    InvalidHypergraph(String),

    #[error("not a permutation: {0}")]
    NotAPermutation(String),

    #[error("{what} {index} out of range (len {len})")]
    OutOfBounds {
        what: &'static str,
        index: usize,
        len: usize,
    },

    #[error("unknown node label {0}")]
    UnknownLabel(u64),

    #[error("query must name at least one node")]
    EmptyQuery,

    #[error("node {0} repeated in exists query")]
    DuplicateQueryLabel(u64),

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error(transparent)]
    Load(#[from] LoadError),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Reasons an index file is rejected.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum LoadError {
    #[error("bad magic bytes, not a hypercsa index")]
    BadMagic,

    #[error("unsupported format version {0}")]
    UnsupportedVersion(u16),

    #[error("index file truncated")]
    Truncated,

    #[error("checksum mismatch (stored {stored:#018x}, computed {computed:#018x})")]
    ChecksumMismatch { stored: u64, computed: u64 },

    #[error("corrupt index: {0}")]
    Corrupt(String),
}

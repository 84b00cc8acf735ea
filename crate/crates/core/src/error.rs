use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank must be at least 1")]
    ZeroRank,

    #[error("letter {letter} is outside the alphabet of rank {rank}")]
    LetterOutOfRange { letter: String, rank: u32 },

    #[error("cannot parse {token:?} at position {position}")]
    BadToken { token: String, position: usize },

    #[error("word is not freely reduced at position {0}")]
    NotReduced(usize),

    #[error("word is not cyclically reduced")]
    NotCyclicallyReduced,

    #[error("empty word")]
    EmptyWord,

    #[error("vertex {vertex} is out of range (graph has {count} vertices)")]
    InvalidVertex { vertex: usize, count: usize },

    #[error("graph is not reduced: two {label}-edges enter vertex {vertex}")]
    GraphNotReduced { vertex: usize, label: String },

    #[error("graph is not cyclically reduced: vertex {0} is an endpoint")]
    GraphNotCyclicallyReduced(usize),

    #[error("graph has an empty cyclic core")]
    EmptyCore,

    #[error("{set} is not a {letter}-cut")]
    NotVCut { letter: String, set: String },

    #[error("rank {rank} exceeds the exhaustive search guard (max {max})")]
    RankGuard { rank: u32, max: u32 },

    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: u32, found: u32 },

    #[error("line {line}: {message}")]
    Format { line: usize, message: String },

    #[error("trace too large to compose: {0} letters exceed the limit")]
    CompositionTooLarge(usize),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

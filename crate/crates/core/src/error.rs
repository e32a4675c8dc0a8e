use thiserror::Error;

/// Errors surfaced by the library.
///
/// `InternalConsistency` and `ImageNotHw` indicate implementation bugs:
/// the theory guarantees the checked conditions, so hitting them means a
/// construction is wrong, not that the input was.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid type: no finite-type root datum {family}{rank}")]
    InvalidType { family: char, rank: usize },

    #[error("depth exceeded: operation needs depth {needed} but graph was generated to {depth}")]
    DepthExceeded { needed: usize, depth: usize },

    #[error("fidelity overflow: generation word capped at {blocks} blocks for depth {depth}")]
    FidelityOverflow { depth: usize, blocks: usize },

    #[error("internal consistency violation: {0}")]
    InternalConsistency(String),

    #[error("root datum mismatch between crystals")]
    RootDatumMismatch,

    #[error("malformed crystal: {0}")]
    MalformedCrystal(String),

    #[error("structure mismatch in component traversal: {0}")]
    StructureMismatch(String),

    #[error("star image violates the highest-weight carving: {0}")]
    NotInImage(String),

    #[error("expected a highest weight element: {0}")]
    ImageNotHw(String),
}

pub type Result<T> = std::result::Result<T, Error>;

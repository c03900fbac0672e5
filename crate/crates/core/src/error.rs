use thiserror::Error;

/// Errors raised by the tangle, link, classification and volume routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("infinity tangle addition undefined here")]
    InfinityAddition,

    #[error("degenerate Montesinos description")]
    DegenerateDescription,

    #[error("Montesinos link needs at least one entry")]
    EmptyLink,

    #[error("family index must be at least {min}, got {n}")]
    FamilyIndex { n: u64, min: u64 },

    #[error("{0}")]
    InvalidTwists(String),

    #[error("witness applies to vertical-tangle diagrams only")]
    NonVerticalEntry,

    #[error("mutation index {index} out of range 1..={max}")]
    MutationIndex { index: usize, max: usize },

    #[error("classification hypothesis not met: {0}")]
    ClassificationHypothesis(String),

    #[error(
        "link has {len} entries, above the enumeration cap of {cap}; use distinct_count_formula instead"
    )]
    EnumerationCap { len: usize, cap: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("family invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

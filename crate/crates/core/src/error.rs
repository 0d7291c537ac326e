use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Everything that can go wrong while building inputs or mining.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid item code `{0}`")]
    InvalidCode(String),

    #[error("unknown item `{0}`")]
    UnknownItem(String),

    #[error("`{child}` appears twice under `{parent}`")]
    DuplicateChild { parent: String, child: String },

    #[error("`{child}` has two parents: `{first}` and `{second}`")]
    MultipleParents {
        child: String,
        first: String,
        second: String,
    },

    #[error("cycle in hierarchy through `{0}`")]
    Cycle(String),

    #[error("`{0}` is not connected to ROOT")]
    Unattached(String),

    #[error("level {level} out of range 1..={max_level}")]
    LevelOutOfRange { level: usize, max_level: usize },

    #[error("transaction `{tid}`: `{item}` is not a terminal item")]
    NonTerminalItem { tid: String, item: String },

    #[error("duplicate transaction id `{0}`")]
    DuplicateTid(String),

    #[error("itemsets must be non-empty")]
    EmptyItemset,

    #[error("itemset members must all be at the same level")]
    MixedLevels,

    #[error("syntax error at {pos}: {message}")]
    Syntax { pos: usize, message: String },

    #[error("not in disjunctive normal form at {pos}: {message}")]
    NonDnf { pos: usize, message: String },

    #[error("`{0}` appears both negated and non-negated in one conjunction")]
    ConflictingLiteral(String),

    #[error("negated literal `{0}` is not allowed in the affirmation part")]
    NegationInAffirmation(String),

    #[error("affirmation literal `{literal}` is removed by negated item `{neg}`")]
    SubsumedAffirmation { literal: String, neg: String },

    #[error("expected {expected} minimum-support thresholds (one per level), got {found}")]
    ThresholdCount { expected: usize, found: usize },

    #[error("invalid threshold `{0}`")]
    InvalidThreshold(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("C({n}, {k}) exceeds the enumeration limit of {limit}")]
    CombinationLimit { n: usize, k: usize, limit: u64 },

    #[error("line {line}: {message}")]
    Format { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

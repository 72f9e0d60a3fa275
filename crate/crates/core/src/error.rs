use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate alternative {0}")]
    DuplicateAlternative(usize),

    #[error("alternative {index} out of range for m = {m}")]
    AlternativeOutOfRange { index: usize, m: usize },

    #[error("expected {expected} alternatives, got {found}")]
    WrongLength { expected: usize, found: usize },

    #[error("{0} alternatives exceeds the supported maximum of 64")]
    TooManyAlternatives(usize),

    /// Witness is a closed walk `a -> b -> ... -> a`.
    #[error("cycle {}", format_cycle(.0))]
    Cycle(Vec<usize>),

    #[error("ballots range over different numbers of alternatives ({0} and {1})")]
    MixedUniverse(usize, usize),

    #[error("invalid rule: {0}")]
    InvalidRule(String),

    #[error("information set has {count} profiles, above the enumeration cap of {cap}")]
    TooLarge { count: u128, cap: u128 },

    #[error("invalid instance: {0}")]
    Invalid(String),

    #[error("{message} at line {line}")]
    Parse { line: usize, message: String },
}

fn format_cycle(walk: &[usize]) -> String {
    walk.iter().map(|a| a.to_string()).collect::<Vec<_>>().join("→")
}

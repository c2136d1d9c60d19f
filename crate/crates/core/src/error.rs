use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{what}: size {size} exceeds configured cap {cap}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("vertex {vertex} out of range for {n} vertices")]
    InvalidVertex { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("kind mismatch: {0}")]
    KindMismatch(String),
    #[error("type mismatch: {0}")]
    TypeMismatch(String),
    #[error("inexact division {num} / {den}")]
    DivisionInexact { num: u64, den: u64 },
    #[error("duplicate key in pattern list")]
    DuplicateKey,
    #[error("support is not downward closed: missing an induced subpattern of entry {0}")]
    SupportNotDownwardClosed(usize),
    #[error("missing value for support entry {0}")]
    MissingValue(usize),
    #[error("structure is not ordered")]
    NotOrdered,
    #[error("invalid range: {0}")]
    InvalidRange(String),
    #[error("query budget of {budget} exceeded on witness {witness}")]
    BudgetExceeded { budget: usize, witness: String },
    #[error("no set-instantiator found after {attempts} attempts: {reason}")]
    RetriesExhausted { attempts: usize, reason: String },
    #[error("no witness found in the scanned poset")]
    NoWitnessFound,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn cap(what: &'static str, size: usize, cap: usize) -> Self {
        Error::CapExceeded { what, size, cap }
    }
}

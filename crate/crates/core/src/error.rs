use thiserror::Error;

use crate::laws::Law;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("table is not square: row {row} has length {len}, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },

    #[error("element index {index} out of range for size {size}")]
    OutOfRange { index: usize, size: usize },

    #[error("table is empty")]
    Empty,

    #[error("product is not associative at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),

    #[error("claimed identity fails against element {0}")]
    BadIdentity(usize),

    #[error("claimed zero fails against element {0}")]
    BadZero(usize),

    #[error("no identity element")]
    NoIdentity,

    #[error("no zero element")]
    NoZero,

    #[error("{family}({n}) would have {size} elements, above the cap of {cap}")]
    TooLarge {
        family: &'static str,
        n: usize,
        size: u128,
        cap: usize,
    },

    #[error("ground set size must be at least 1")]
    EmptyGroundSet,

    #[error("unary map has length {len}, expected {expected}")]
    UnaryLength { len: usize, expected: usize },

    #[error("law {law} violated at {witness:?}")]
    LawViolated { law: Law, witness: Vec<usize> },

    #[error("subset is not closed: product of {0} and {1} leaves it")]
    NotClosed(usize, usize),

    #[error("element {0} is not idempotent")]
    NotIdempotent(usize),

    #[error("selector cannot be applied: {0}")]
    SelectorInapplicable(String),

    #[error("not an E-demigroup: {0}")]
    NotEDemigroup(String),

    #[error("not integral: {0} * {1} = 0")]
    NotIntegral(usize, usize),

    #[error("idempotent set must contain {0}")]
    MissingRequired(&'static str),

    #[error("not an inductive left E-monoid: {0}")]
    NotInductive(String),

    #[error("not protomodal: Eq({s}, {s}*{e}) has no idempotent generator")]
    NotProtomodal { s: usize, e: usize },

    #[error("relation is not a congruence at ({0}, {1})")]
    NotCongruence(usize, usize),

    #[error("isomorphism search exceeded its budget of {0} nodes")]
    SearchBudgetExceeded(u64),

    #[error("not enough large idempotents: domain element {0} has no partner")]
    NotEnoughLargeIdempotents(usize),

    #[error("Zappa-Szep law {0} fails")]
    ZsLawFails(Law),

    #[error("map is not an isomorphism: {0}")]
    NotIsomorphism(String),

    #[error("malformed input: {0}")]
    Malformed(String),
}

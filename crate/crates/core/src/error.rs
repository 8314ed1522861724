use thiserror::Error;

use crate::Nat;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A parameter triple or morphism triple violates an admissibility condition.
    #[error("invalid parameters: {0}")]
    Validation(String),

    #[error("group order {order} exceeds the size bound {bound}")]
    SizeBound { order: Nat, bound: Nat },

    #[error("arithmetic overflow while computing {0}")]
    Overflow(&'static str),

    /// A closed-form sum that must be an exact multiple of `divisor` was not.
    #[error("integrality failure in {what}: {numerator} is not divisible by {divisor}")]
    Integrality {
        what: &'static str,
        numerator: Nat,
        divisor: Nat,
    },

    #[error("i/o error: {0}")]
    Io(String),

    /// A brute-force invariant that holds for any genuine group action failed.
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

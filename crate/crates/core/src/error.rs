use thiserror::Error;

use crate::poly::SparsePoly;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    /// Exact division left a nonzero remainder.
    #[error("division is not exact (remainder {0})")]
    Remainder(SparsePoly),

    #[error("polynomial is not a product of cyclotomic factors (residual {0})")]
    NotPureCyclotomic(SparsePoly),

    /// A C-aware value whose net multiplicity for `Phi_d` is negative.
    #[error("not a polynomial: net multiplicity of Phi_{0} is negative")]
    NotAPolynomial(u64),

    #[error("inconsistent input: {0}")]
    Inconsistency(String),

    #[error("capacity exceeded: field `{field}` value {value} does not fit in {bits} bits")]
    Capacity {
        field: &'static str,
        value: String,
        bits: u32,
    },

    #[error("malformed blob: {0}")]
    Malformed(String),

    /// Internal invariant broken; indicates a bug or a corrupted value.
    #[error("invariant violation: {0}")]
    InvariantViolation(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn malformed(msg: impl Into<String>) -> Self {
        Error::Malformed(msg.into())
    }
}

use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A root-of-unity sum that must be a rational integer was not.
    #[error("integrality violation in Z[zeta_{order}]: canonical form {canonical:?}")]
    IntegralityViolation { order: u32, canonical: Vec<BigInt> },

    #[error("order mismatch: Z[zeta_{left}] vs Z[zeta_{right}]")]
    OrderMismatch { left: u32, right: u32 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("{what} needs {required} but the budget is {budget}")]
    BudgetExceeded {
        what: &'static str,
        required: u128,
        budget: u128,
    },

    /// A statement that is proven (not conjectural) failed on a concrete instance.
    #[error("proven statement violated: {0}")]
    ProvenClaimViolated(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}

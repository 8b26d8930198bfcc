use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("cap mismatch: {left:?} vs {right:?}")]
    CapMismatch { left: Vec<u32>, right: Vec<u32> },

    #[error("exponent {exponent:?} lies outside caps {caps:?}")]
    ExponentOutOfCaps { exponent: Vec<u32>, caps: Vec<u32> },

    /// The dense expansion grid for these caps would not fit the memory budget.
    #[error(
        "expansion with caps {caps:?} needs about {needed_bytes} bytes, over the budget of \
         {budget_bytes} bytes (limiting cap: n_{} = {})",
        limiting_index + 1,
        caps[*limiting_index]
    )]
    CapExceeded {
        caps: Vec<u32>,
        limiting_index: usize,
        needed_bytes: u128,
        budget_bytes: u64,
    },

    #[error("series inversion needs constant term 1, found {0}")]
    BadConstantTerm(String),

    #[error("chern data for {0} carries no Chern polynomial; products need it")]
    MissingChernPolynomial(String),

    /// A theorem-backed postcondition failed; this always indicates a bug.
    #[error("verification failed: {0}")]
    VerificationFailed(String),
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

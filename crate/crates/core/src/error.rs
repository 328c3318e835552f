use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("scalars live in Q(zeta_{left}) and Q(zeta_{right}) with no common embedding")]
    ModulusMismatch { left: u32, right: u32 },
    #[error("operands refer to different braidings")]
    BraidingMismatch,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    /// `degree` is the first degree that could not be computed.
    #[error("budget exceeded in degree {degree}: {what} needs {needed}, limit {limit}")]
    BudgetExceeded { what: String, degree: usize, needed: u64, limit: u64 },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("model built to degree {built}, degree {needed} required")]
    DepthInsufficient { needed: usize, built: usize },
    #[error("cannot parse scalar `{input}`: {reason}")]
    ScalarParse { input: String, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;

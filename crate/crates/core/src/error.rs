use alloc::string::String;
use core::fmt;

/// Failure classes shared by every operation in the crate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Malformed or mismatched input (bad partition, degree mismatch, ...).
    InvalidArgument(String),
    /// A size guard from [`crate::Limits`] would be exceeded.
    ResourceLimit(String),
    /// A quantity that is exactly integral or exactly idempotent in exact
    /// arithmetic drifted beyond tolerance.
    NumericalConsistency(String),
    /// The input has no component in the subspace the operation targets.
    DegenerateInput(String),
}

impl Error {
    /// Short kebab-case name of the failure class.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidArgument(_) => "invalid-argument",
            Error::ResourceLimit(_) => "resource-limit",
            Error::NumericalConsistency(_) => "numerical-consistency",
            Error::DegenerateInput(_) => "degenerate-input",
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Error::InvalidArgument(m)
            | Error::ResourceLimit(m)
            | Error::NumericalConsistency(m)
            | Error::DegenerateInput(m) => m,
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind(), self.message())
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;

macro_rules! invalid {
    ($($arg:tt)*) => {
        $crate::Error::InvalidArgument(alloc::format!($($arg)*))
    };
}
pub(crate) use invalid;

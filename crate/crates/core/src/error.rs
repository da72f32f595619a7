use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument fell outside the domain of the operation.
    Domain { what: &'static str, value: f64 },
    /// A constructor rejected a parameter that violates a type invariant.
    InvalidParameter {
        name: &'static str,
        reason: &'static str,
    },
    /// The satellite is below the local horizon of the user.
    BelowHorizon,
}

impl Error {
    pub(crate) fn domain(what: &'static str, value: f64) -> Self {
        Error::Domain { what, value }
    }

    pub(crate) fn invalid(name: &'static str, reason: &'static str) -> Self {
        Error::InvalidParameter { name, reason }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain { what, value } => write!(f, "{what} out of domain: {value}"),
            Error::InvalidParameter { name, reason } => write!(f, "invalid {name}: {reason}"),
            Error::BelowHorizon => f.write_str("satellite is below the user's horizon"),
        }
    }
}

impl core::error::Error for Error {}

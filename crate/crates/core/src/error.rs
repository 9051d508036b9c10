use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors raised by the library.
///
/// The CLI maps each variant onto an exit code via [`Error::exit_code`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("{what} exceeds the configured limit of {limit} (raise it with {knob})")]
    ResourceLimit {
        what: String,
        limit: u64,
        knob: &'static str,
    },

    #[error("arithmetic overflow computing {0}")]
    Overflow(&'static str),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("theorem violation: {0}")]
    TheoremViolation(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub(crate) fn limit(what: impl Into<String>, limit: u64, knob: &'static str) -> Self {
        Error::ResourceLimit {
            what: what.into(),
            limit,
            knob,
        }
    }

    /// Process exit code: 2 usage, 3 resource limit, 4 theorem violation.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Invalid(_) | Error::Precondition(_) => 2,
            Error::ResourceLimit { .. } | Error::Overflow(_) => 3,
            Error::TheoremViolation(_) => 4,
        }
    }
}

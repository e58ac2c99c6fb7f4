use thiserror::Error;

/// Errors raised by presentations, constructions and checks.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed presentation: {0}")]
    MalformedPresentation(String),
    #[error("missing entry: {0}")]
    MissingEntry(String),
    #[error("{law} violated: {witness}")]
    Violation { law: String, witness: String },
    #[error("window closure: {0} is not inside the presented window")]
    WindowClosure(String),
    #[error("resource cap exceeded: {what} (limit {limit})")]
    ResourceCap { what: String, limit: u64 },
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("no left adjoint: upper set of {witness} has no minimum")]
    NoAdjoint { witness: String },
    #[error("no weak pullback for cospan {0}")]
    NoWeakPullback(String),
    #[error("formula mismatch: {0}")]
    FormulaMismatch(String),
    #[error("descent fiber not closed: {0}")]
    DesNotClosed(String),
    #[error("no transitive extension: {0}")]
    NoExtension(String),
    #[error("unavailable: {0}")]
    Unavailable(String),
    #[error("{line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
}

impl Error {
    pub fn violation(law: impl Into<String>, witness: impl Into<String>) -> Self {
        Error::Violation { law: law.into(), witness: witness.into() }
    }

    pub fn cap(what: impl Into<String>, limit: u64) -> Self {
        Error::ResourceCap { what: what.into(), limit }
    }

    /// Process exit code for the command line: 1 violation, 2 malformed input, 3 cap.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::ResourceCap { .. } => 3,
            Error::Parse { .. }
            | Error::MalformedPresentation(_)
            | Error::MissingEntry(_)
            | Error::DomainMismatch(_)
            | Error::WindowClosure(_) => 2,
            _ => 1,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

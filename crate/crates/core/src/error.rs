use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("numerical error: {0}")]
    Numerical(String),
    #[error("root not found: {0}")]
    RootNotFound(String),
    #[error("degenerate eigenphases: {0}")]
    Degenerate(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

impl Error {
    /// Short machine-readable tag, used by the CLI.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::Numerical(_) => "numerical",
            Error::RootNotFound(_) => "root_not_found",
            Error::Degenerate(_) => "degenerate",
            Error::Precondition(_) => "precondition",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

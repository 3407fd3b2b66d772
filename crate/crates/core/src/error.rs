use thiserror::Error;

/// Failures raised by the solver pipeline.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("no vacuum: {0}")]
    NoVacuum(String),

    #[error("instability: {0}")]
    Instability(String),

    #[error("solver did not converge after {iterations} iterations (best residual {best_residual:e})")]
    NonConvergence { iterations: usize, best_residual: f64 },

    #[error("no solution: {0}")]
    NoSolution(String),

    #[error("inconsistent input: {0}")]
    Consistency(String),

    #[error("misuse: {0}")]
    Misuse(String),

    #[error("range error: {0}")]
    Range(String),

    #[error("usage error: {0}")]
    Usage(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Short machine-readable code, used in the `status` column of reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::NoVacuum(_) => "no_vacuum",
            Error::Instability(_) => "instability",
            Error::NonConvergence { .. } => "non_convergence",
            Error::NoSolution(_) => "no_solution",
            Error::Consistency(_) => "consistency",
            Error::Misuse(_) => "misuse",
            Error::Range(_) => "range",
            Error::Usage(_) => "usage",
            Error::Io(_) => "io",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Crate-wide error type. Variants map onto the CLI exit codes: config
/// errors exit 4, failed checks exit 2, everything numerical exits 3.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("argument error: {0}")]
    Argument(String),

    #[error("construction error: {0}")]
    Construction(String),

    #[error("mesh quality error: {0}")]
    MeshQuality(String),

    #[error("topology error: {0}")]
    Topology(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("perturbation too large: {0}")]
    PerturbationTooLarge(String),

    #[error("region diagnostics unavailable: {0}")]
    DiagnosticsUnavailable(String),

    #[error("numerical error: {0}")]
    Numerical(String),

    #[error("solver diverged: {0}")]
    Diverged(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("check failed: {0}")]
    CheckFailed(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

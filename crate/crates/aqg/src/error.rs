use thiserror::Error;

#[derive(Debug, Error)]
pub enum AqgError {
    #[error("shape error: {0}")]
    Shape(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid group table: {0}")]
    NotAGroup(String),
    #[error("axiom check `{name}` failed (residual {value:.3e}, tolerance {tol:.1e})")]
    AxiomFailure { name: String, value: f64, tol: f64 },
    #[error("no positive Haar functional: {0}")]
    NoHaar(String),
    #[error("singular system: {0}")]
    Singular(String),
    #[error("modular data: {0}")]
    Modular(String),
    #[error("the Haar functional is not a trace")]
    NonTracial,
    #[error("degenerate representation: {0}")]
    Degenerate(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl AqgError {
    /// Process exit code for the command-line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            AqgError::Shape(_)
            | AqgError::Parse(_)
            | AqgError::NotAGroup(_)
            | AqgError::Invalid(_)
            | AqgError::Io(_) => 1,
            AqgError::NoHaar(_) => 3,
            AqgError::AxiomFailure { .. }
            | AqgError::Singular(_)
            | AqgError::Modular(_)
            | AqgError::NonTracial
            | AqgError::Degenerate(_) => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, AqgError>;

use thiserror::Error;

/// Errors shared by every module of the library.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter fell outside its stated domain.
    #[error("parameter out of domain: {0}")]
    ParameterDomain(String),

    /// A PMF violated one of its structural invariants.
    #[error("invalid pmf: {0}")]
    InvalidPmf(String),

    /// An operation was invoked on an input that fails the class
    /// hypothesis it requires (e.g. Poisson bounded, ultra bounded).
    #[error("hypothesis violation: input is not {class}: {detail}")]
    HypothesisViolation { class: String, detail: String },

    /// A desk-scale resource cap was exceeded.
    #[error("resource limit exceeded: {0}")]
    Resource(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Errors raised by the numeric engines and identity evaluators.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("infeasible common value: {0}")]
    Infeasible(String),

    #[error("degenerate parameters: {0}")]
    Degenerate(String),

    #[error("invalid precision context: {0}")]
    Context(String),

    #[error("series did not converge within {terms} terms (last tail bound {tail})")]
    NonConvergence { terms: u64, tail: String },

    #[error("term magnitudes increase persistently up to index {index}")]
    Monotonicity { index: u64 },

    #[error("value {value} exceeds the declared decay envelope {bound} at {at}")]
    Envelope { at: String, value: String, bound: String },

    #[error("quadrature did not converge after {levels} refinement levels (last change {change})")]
    Quadrature { levels: u32, change: String },

    #[error("result underflows the working exponent range")]
    Underflow,
}

pub type Result<T> = std::result::Result<T, Error>;

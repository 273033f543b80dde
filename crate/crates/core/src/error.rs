use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid Cartan data: {0}")]
    InvalidCartan(String),

    #[error("the step h must be non-zero")]
    ZeroStep,

    #[error("zero polynomial is not allowed here: {0}")]
    ZeroPoly(String),

    #[error("tuple is not fertile in direction {0}")]
    NotFertile(usize),

    #[error("fertility failure at step {step} (direction {direction})")]
    FertilityAtStep { step: usize, direction: usize },

    #[error("residue oracle inapplicable: {0}")]
    OracleInapplicable(String),

    #[error("pole in Bethe equation: {0}")]
    Pole(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

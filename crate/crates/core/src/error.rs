use thiserror::Error;

/// Errors raised by the algebra engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("resource limit exceeded: {what} > {limit}")]
    ResourceLimit { what: &'static str, limit: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("map is not well defined: relation {relation} maps to {image}")]
    NotWellDefined { relation: String, image: String },

    #[error("map is not idempotent at {var}: pi(pi({var})) = {twice}, pi({var}) = {once}")]
    NotIdempotent {
        var: String,
        once: String,
        twice: String,
    },

    #[error("linear part is singular; not a coordinate system")]
    NotACoordinateSystem,

    #[error("ring is not Artinian (Krull dimension {0})")]
    NotArtinian(usize),

    #[error("normalization failed: {0}")]
    NormalizationFailed(String),

    #[error("transition factor is not a unit of the required form: {0}")]
    LambdaNotUnit(String),

    #[error("decomposition failed: {0}")]
    DecompositionFailed(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

use thiserror::Error;

/// Domain errors shared by every module.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("surface parameter n must be positive")]
    InvalidSurface,
    #[error("zero vector has no slope")]
    ZeroVector,
    #[error("vector is not isotropic")]
    NotIsotropic,
    #[error("vector is not primitive")]
    NotPrimitive,
    #[error("vector is not positive")]
    NotPositive,
    #[error("rank-zero vector not allowed here")]
    RankZero,
    #[error("pairing of the two vectors is not -1")]
    PairingNotMinusOne,
    #[error("self-pairing must be positive")]
    NonPositiveSquare,
    #[error("n*ell is a perfect square")]
    SquareDiscriminant,
    #[error("unsupported parameter: {0}")]
    Unsupported(String),
    #[error("no solution within the height bound")]
    NoSolutionWithinBound,
    #[error("operation requires n = 1")]
    NotRankOneSurface,
    #[error("negative discriminant")]
    NegativeDiscriminant,
    #[error("value out of range: {0}")]
    OutOfRange(String),
    #[error("inconsistent group element: {0}")]
    InconsistentElement(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

impl Error {
    /// Stable identifier used in CLI output.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidSurface => "InvalidSurface",
            Error::ZeroVector => "ZeroVector",
            Error::NotIsotropic => "NotIsotropic",
            Error::NotPrimitive => "NotPrimitive",
            Error::NotPositive => "NotPositive",
            Error::RankZero => "RankZero",
            Error::PairingNotMinusOne => "PairingNotMinusOne",
            Error::NonPositiveSquare => "NonPositiveSquare",
            Error::SquareDiscriminant => "SquareDiscriminant",
            Error::Unsupported(_) => "Unsupported",
            Error::NoSolutionWithinBound => "NoSolutionWithinBound",
            Error::NotRankOneSurface => "NotRankOneSurface",
            Error::NegativeDiscriminant => "NegativeDiscriminant",
            Error::OutOfRange(_) => "OutOfRange",
            Error::InconsistentElement(_) => "InconsistentElement",
            Error::Precondition(_) => "Precondition",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot parse number: {0:?}")]
    ParseNumber(String),
    #[error("cannot parse polynomial: {0}")]
    ParsePolynomial(String),
    #[error("the zero polynomial has no solution-set structure")]
    ZeroPolynomial,
    #[error("constant polynomials are not supported (degree must be >= 1)")]
    DegreeZero,
    #[error("matrix size must be >= 2, got {0}")]
    MatrixTooSmall(usize),
    #[error("matrix size mismatch: expected {expected}x{expected}, got {got}x{got}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("cannot parse matrix: {0}")]
    ParseMatrix(String),
    #[error("exact sampling is unavailable: stratum {0} has an irrational canonical form")]
    ExactSamplingUnavailable(String),
    #[error("no invertible conjugator found after {0} draws")]
    ConjugatorRejected(usize),
    #[error("unknown stratum id: {0}")]
    UnknownStratum(String),
    #[error(
        "eigenvalue {value} matches roots {first} and {second} within tolerance; refusing to guess"
    )]
    AmbiguousEigenvalue { value: String, first: String, second: String },
    #[error("exact rank requested for a floating-point matrix")]
    ExactRankOnFloat,
    #[error("complex pair extraction failed: {0}")]
    PairExtraction(String),
    #[error("invalid sample configuration: {0}")]
    InvalidSampleConfig(String),
}

use thiserror::Error;

/// Every failure the library can report.
///
/// The `Display` form starts with the stable error code (`ORIGIN_NOT_CONTAINED`, ...)
/// so front ends can surface it verbatim.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("ORIGIN_NOT_CONTAINED: the convex hull does not contain the origin")]
    OriginNotContained,
    #[error("ORIGIN_NOT_INTERIOR: the origin must lie in the interior of {0}")]
    OriginNotInterior(&'static str),
    #[error("DIMENSION_MISMATCH: {0}")]
    DimensionMismatch(String),
    #[error("EMPTY_INPUT: {0}")]
    EmptyInput(&'static str),
    #[error("ZERO_DIRECTION: direction vector must be nonzero")]
    ZeroDirection,
    #[error("SINGULAR_MAP: linear map has zero determinant")]
    SingularMap,
    #[error("OFFSET_NOT_ZERO: hyperplane must pass through the origin")]
    OffsetNotZero,
    #[error("BAD_SCALE: scale factor must be positive")]
    BadScale,
    #[error("LAMBDA_RANGE: lambda must satisfy 0 < lambda < 1")]
    LambdaRange,
    #[error("UNBOUNDED: halfspace system does not bound a region")]
    Unbounded,
    #[error("INFEASIBLE: halfspace system has no vertices")]
    Infeasible,
    #[error("BAD_EXPONENT: exponent must be positive, got {0}")]
    BadExponent(f64),
    #[error("ZERO_P: exponent p = 0 is not supported here")]
    ZeroP,
    #[error("NEGATIVE_SUPPORT: support value {0} is not positive where required")]
    NegativeSupport(f64),
    #[error("NEGATIVE_MASS: combination produced a negative atom mass {0}")]
    NegativeMass(f64),
    #[error("EMPTY_PROBES: the probe family is empty")]
    EmptyProbes,
    #[error("DEGENERATE_RETRY_EXCEEDED: {0}")]
    DegenerateRetryExceeded(&'static str),
    #[error("CONFIG_INVALID: {0}")]
    ConfigInvalid(String),
    #[error("UNKNOWN_MAP: no registered measure map named {0:?}")]
    UnknownMap(String),
    #[error("PARSE: {0}")]
    Parse(String),
}

impl Error {
    /// The stable code prefix of the message.
    pub fn code(&self) -> &'static str {
        match self {
            Error::OriginNotContained => "ORIGIN_NOT_CONTAINED",
            Error::OriginNotInterior(_) => "ORIGIN_NOT_INTERIOR",
            Error::DimensionMismatch(_) => "DIMENSION_MISMATCH",
            Error::EmptyInput(_) => "EMPTY_INPUT",
            Error::ZeroDirection => "ZERO_DIRECTION",
            Error::SingularMap => "SINGULAR_MAP",
            Error::OffsetNotZero => "OFFSET_NOT_ZERO",
            Error::BadScale => "BAD_SCALE",
            Error::LambdaRange => "LAMBDA_RANGE",
            Error::Unbounded => "UNBOUNDED",
            Error::Infeasible => "INFEASIBLE",
            Error::BadExponent(_) => "BAD_EXPONENT",
            Error::ZeroP => "ZERO_P",
            Error::NegativeSupport(_) => "NEGATIVE_SUPPORT",
            Error::NegativeMass(_) => "NEGATIVE_MASS",
            Error::EmptyProbes => "EMPTY_PROBES",
            Error::DegenerateRetryExceeded(_) => "DEGENERATE_RETRY_EXCEEDED",
            Error::ConfigInvalid(_) => "CONFIG_INVALID",
            Error::UnknownMap(_) => "UNKNOWN_MAP",
            Error::Parse(_) => "PARSE",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

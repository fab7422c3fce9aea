use thiserror::Error;

/// Errors raised by ring arithmetic, series manipulation and the symbol
/// evaluators.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("descriptor mismatch: {0} vs {1}")]
    DescriptorMismatch(String, String),
    #[error("invalid ring descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("invalid value for {ring}: {reason}")]
    InvalidValue { ring: String, reason: String },
    #[error("not a unit: {0}")]
    NotAUnit(String),
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("series is not regular: {0}")]
    NotRegular(String),
    #[error("argument outside the supported domain: {0}")]
    UnsupportedArgument(String),
    #[error("group elements {0} and {1} do not commute")]
    NonCommutingPair(usize, usize),
    #[error("invalid cocycle: {0}")]
    InvalidCocycle(String),
    #[error("singular Toeplitz compression: {0}")]
    SingularCompression(String),
    #[error("zero rational function")]
    ZeroFunction,
    #[error("function vanishes identically along {0}")]
    ZeroOnCurve(String),
    #[error("flag cover incomplete: {0}")]
    IncompleteFlagCover(String),
    #[error("leading coefficient is not a unit: {0}")]
    NonUnitLeadingCoefficient(String),
    #[error("invalid place or flag: {0}")]
    InvalidPlace(String),
    #[error("value changed between precision {low} and {high}: {detail}")]
    PrecisionDependence { low: i64, high: i64, detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;

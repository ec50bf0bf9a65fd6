use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("negative argument {0} where a non-negative integer is required")]
    NegativeArgument(i64),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("polynomial division leaves a nonzero remainder")]
    NonExactDivision,
    #[error("the zero polynomial has no degree")]
    ZeroPolynomial,
    #[error("fraction does not reduce to a Laurent polynomial")]
    NotPolynomial,
    #[error("inadmissible coloring ({0}, {1}, {2})")]
    InadmissibleColoring(i64, i64, i64),
    #[error("framing phase (sqrt -1)^(-{0}) is not real")]
    NonRealPhase(i64),
    #[error("framing exponent -{0}/2 is not an integer")]
    FractionalExponent(i64),
    #[error("invalid knot parameters: {0}")]
    InvalidParams(String),
    #[error("N = {n} is below the stabilization threshold N0 = {n0}")]
    BelowThreshold { n: i64, n0: i64 },
    #[error("no quadratic fit for residue class {0}")]
    NoQuadraticFit(i64),
    #[error("{0}")]
    NotCaseOne(String),
    #[error("edgepath construction fault: {0}")]
    Construction(String),
    #[error("unsupported edgepath ending: {0}")]
    UnsupportedEnding(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

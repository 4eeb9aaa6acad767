use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("negative exponent {0} for a polynomial power")]
    NegativeExponent(i64),
    #[error("zero polynomial has no leading coefficient")]
    ZeroPolynomial,
    #[error("division by zero")]
    DivisionByZero,
    #[error("unknown variable {0}")]
    UnknownVariable(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("function argument {0} is not linear in {1}")]
    NonLinearArgument(String, String),
    #[error("incommensurate frequencies: {0}")]
    IncommensurateFrequency(String),
    #[error("zero denominator in rational form")]
    ZeroDenominator,
    #[error("cannot normalize expression: {0}")]
    Normalization(String),
    #[error("unknown preset {0:?} (expected ski7, lax7 or kk7)")]
    UnknownPreset(String),
    #[error("empty ansatz: every amplitude is zero")]
    EmptyAnsatz,
    #[error("system is not weighted-homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("degree bound {0} exceeded during Gröbner basis computation")]
    DegreeBoundExceeded(u32),
    #[error("every sample was rejected by the singularity guard")]
    NoValidSamples,
    #[error("continued form is not real: {0}")]
    NotReal(String),
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("non-finite value at step {step} (t = {time})")]
    NonFinite { step: usize, time: f64 },
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

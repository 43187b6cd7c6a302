use std::fmt;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Syntax error in a curve document or an expression.
#[derive(Debug, Clone, PartialEq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub found: String,
    pub expected: Vec<String>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: unexpected {}", self.line, self.column, self.found)?;
        if !self.expected.is_empty() {
            write!(f, ", expected one of: {}", self.expected.join(", "))?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),

    #[error("range error: {0}")]
    Range(String),

    #[error("evaluation error at t = {t}: {reason}")]
    Eval { t: f64, reason: String },

    #[error("point {norm:e} from the origin, too close to invert")]
    OriginSingularity { norm: f64 },

    #[error("irregular point at t = {t} (speed {speed:e})")]
    IrregularPoint { t: f64, speed: f64 },

    #[error("inflection point at t = {t} (curvature {kappa:e})")]
    InflectionPoint { t: f64, kappa: f64 },

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("cannot lift to a continuous normal near t = {t}")]
    LiftFailure { t: f64 },
}

impl Error {
    pub(crate) fn range(msg: impl Into<String>) -> Self {
        Error::Range(msg.into())
    }
}

use thiserror::Error;

use crate::expr::ExprError;

/// Errors raised by the engine, diagnostics and renderers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error("{function} is not finite on its domain at {at}: {source}")]
    InvalidSystem {
        function: &'static str,
        at: f64,
        source: ExprError,
    },
    #[error("numeric failure at step {step}: {source}")]
    AtStep { step: usize, source: ExprError },
    #[error("invalid interval [{lo}, {hi}]: bounds must be finite with lo < hi")]
    InvalidInterval { lo: f64, hi: f64 },
    #[error("no grid point of [{lo}, {hi}] could be evaluated")]
    NoValidPoints { lo: f64, hi: f64 },
    #[error("function is not strictly monotone: samples at {a} and {b} disagree in direction")]
    NonMonotone { a: f64, b: f64 },
    #[error("value {y} is not attained on the interval (range [{lo}, {hi}])")]
    OutOfRange { y: f64, lo: f64, hi: f64 },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("malformed input: {0}")]
    Format(String),
}

/// Coarse classification used to map errors onto process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Parse,
    Numeric,
    Precondition,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Expr(e) if e.is_parse_error() => ErrorKind::Parse,
            Error::Format(_) => ErrorKind::Parse,
            Error::Expr(_)
            | Error::InvalidSystem { .. }
            | Error::AtStep { .. }
            | Error::NoValidPoints { .. } => ErrorKind::Numeric,
            Error::InvalidInterval { .. }
            | Error::NonMonotone { .. }
            | Error::OutOfRange { .. }
            | Error::Precondition(_)
            | Error::InvalidArgument(_) => ErrorKind::Precondition,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

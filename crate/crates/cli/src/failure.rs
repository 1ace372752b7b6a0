use std::fmt;

use reflexivity::{Error, ErrorKind};

pub const EXIT_PARSE: u8 = 2;
pub const EXIT_NUMERIC: u8 = 3;
pub const EXIT_PRECONDITION: u8 = 4;

/// A diagnostic plus the process exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn parse(message: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_PARSE,
            message: message.into(),
        }
    }

    pub fn precondition(message: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_PRECONDITION,
            message: message.into(),
        }
    }

    pub fn io(message: impl Into<String>) -> Failure {
        Failure::precondition(message)
    }

    pub fn missing(field: &str) -> Failure {
        Failure::parse(format!(
            "missing `{field}`: pass it as a flag or in the scenario file"
        ))
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e.kind() {
            ErrorKind::Parse => EXIT_PARSE,
            ErrorKind::Numeric => EXIT_NUMERIC,
            ErrorKind::Precondition => EXIT_PRECONDITION,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<reflexivity::ExprError> for Failure {
    fn from(e: reflexivity::ExprError) -> Failure {
        Error::from(e).into()
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

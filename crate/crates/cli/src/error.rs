use std::fmt;

/// Exit code 2.
pub const EXIT_INPUT: i32 = 2;
/// Exit code 3.
pub const EXIT_MATH: i32 = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CliError {
    /// Malformed descriptor, bad flag value, unreadable or unwritable file.
    Input(String),
    /// A mathematical assertion failed on valid input.
    Math(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Math(_) => EXIT_MATH,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "input error: {m}"),
            CliError::Math(m) => write!(f, "assertion failure: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<qtop_core::Error> for CliError {
    fn from(e: qtop_core::Error) -> Self {
        if e.is_input_error() {
            CliError::Input(e.to_string())
        } else {
            CliError::Math(e.to_string())
        }
    }
}

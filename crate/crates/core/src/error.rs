use thiserror::Error;

/// Everything that can go wrong inside the numerical laboratory.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("non-finite value in {what} at index {index} (r = {r})")]
    NonFinite { what: &'static str, index: usize, r: f64 },

    #[error("out of domain: {0}")]
    OutOfDomain(String),

    #[error("shooting bracket invalid: {0}")]
    Bracket(String),

    #[error("solver did not converge: {0}")]
    NoConvergence(String),

    #[error("{what} encountered a singular point at r = {r}")]
    Singular { what: &'static str, r: f64 },

    #[error("evolution became non-finite at t = {t} near r = {r}")]
    Blowup { t: f64, r: f64 },

    #[error("fit rejected: {0}")]
    Fit(String),

    #[error("configuration error for key `{key}`: {message}")]
    Config { key: String, message: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn config(key: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config { key: key.into(), message: message.into() }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

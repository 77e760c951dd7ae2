//! Crate-wide error type.
//!
//! Errors fall into two classes: *input* errors (bad symbols, malformed
//! documents, invalid generators) and *resource* errors (a configured cap was
//! exceeded). The CLI maps the former to exit code 1 and the latter to 2.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown symbol '{symbol}' (alphabet is \"{alphabet}\")")]
    UnknownSymbol { symbol: char, alphabet: String },

    #[error("alphabet mismatch: \"{left}\" vs \"{right}\"")]
    AlphabetMismatch { left: String, right: String },

    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },

    #[error("automaton is not flagged minimal")]
    NotMinimal,

    #[error("invalid automaton: {0}")]
    InvalidAutomaton(String),

    #[error("{what} exceeded the configured cap of {cap}")]
    CapExceeded { what: &'static str, cap: usize },

    #[error("carrier is not materialized (profile count exceeds the Boolean materialization cap)")]
    Unmaterialized,

    #[error("not a generator of the CABA: the elements do not span the powerset of profiles")]
    NotACabaGenerator,

    #[error("construction refused: generator cannot decompose carrier element {element}")]
    InvalidGenerator { element: String },

    #[error("brute-force enumeration refused: {0}")]
    EnumerationLimit(String),

    #[error("{0}")]
    Input(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for cap/materialization failures, the CLI's exit-code-2 class.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::CapExceeded { .. } | Error::Unmaterialized)
    }

    pub fn exit_code(&self) -> i32 {
        if self.is_resource() {
            2
        } else {
            1
        }
    }
}

use thiserror::Error;

use crate::pi::{Generator, Violation};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("index sets {a} and {b} are not disjoint")]
    Disjointness { a: String, b: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("enumeration of {k} indices exceeds the budget of {budget}")]
    BudgetExceeded { k: u32, budget: u32 },

    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: u32, right: u32 },

    #[error("level mismatch: {left} vs {right}")]
    LevelMismatch { left: usize, right: usize },

    #[error("malformed element: {0}")]
    Element(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("schema error at {location}: {message}")]
    Schema { location: String, message: String },

    #[error("model validation failed: {}", format_violations(.0))]
    Validation(Vec<Violation>),

    #[error("model is not class 2: bracket [{a}, {b}] takes a bracket output as argument")]
    ModelNotClass2 { a: Generator, b: Generator },

    #[error("unknown catalog model `{0}`")]
    UnknownModel(String),

    #[error("group cannot be enumerated: {0}")]
    NotEnumerable(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn schema(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Schema {
            location: location.into(),
            message: message.into(),
        }
    }

    /// Exit status used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. }
            | Error::Schema { .. }
            | Error::Validation(_)
            | Error::ModelNotClass2 { .. }
            | Error::UnknownModel(_)
            | Error::Io(_) => 3,
            _ => 2,
        }
    }
}

fn format_violations(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

use thiserror::Error;

use crate::semiring::AxiomReport;

/// Problems with the shape of a semiring description, independent of the axioms.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("no elements declared")]
    Empty,
    #[error("{0} elements exceed the capacity of 64")]
    TooLarge(usize),
    #[error("duplicate element name `{0}`")]
    DuplicateName(String),
    #[error("zero `{0}` is not a declared element")]
    UnknownZero(String),
    #[error("{table} table: expected {expected} rows, found {found}")]
    RowCount {
        table: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("{table} table: row {row} has {found} entries, expected {expected}")]
    RowLength {
        table: &'static str,
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("{table} table: entry `{entry}` at ({row},{col}) is not a declared element")]
    UnknownEntry {
        table: &'static str,
        row: usize,
        col: usize,
        entry: String,
    },
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("format error: {0}")]
    Format(#[from] FormatError),
    #[error("axiom violation: {0}")]
    Axioms(AxiomReport),
    #[error("direct product would have {0} elements, capacity is 64")]
    Capacity(usize),
    #[error("unknown builtin `{0}` (known: R2, R4, D2, D3, S8, Z2F, Z3F)")]
    UnknownBuiltin(String),
    #[error("{0} is not closed under the operations")]
    NotSubalgebra(String),
    #[error("term error: {0}")]
    Term(#[from] crate::malcev::TermError),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid semiring file: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

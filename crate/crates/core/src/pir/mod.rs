//! The retrieval schemes: parameter setup, query generation, server answers
//! and the two retrieval paths.
//!
//! With `b = 0` this is the plain `t`-private scheme; with `b >= 1` the
//! client additionally corrects up to `b` wrong answers. Both share one code
//! path.

mod answer;
mod capacity;
mod database;
mod params;
mod query;
mod retrieve;
mod rng;

pub use answer::{server_answer, Answer, AnswerMode};
pub use capacity::{capacity, capacity_finite};
pub use database::Database;
pub use params::{validate_optimality, OptimalityReport, ParamsDocument, SchemeParams, SetupRequest};
pub use query::{
    encode_entry, gen_queries, queries_with_blinding, ClientSecret, QueryDocument, QuerySet, SymbolArray,
};
pub use retrieve::{retrieve_from_k, retrieve_from_r, Retrieved};
pub use rng::FieldRng;

use thiserror::Error;

use crate::gf::GfError;
use crate::rscodes::RsError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PirError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("file index {iota} outside [1, {m}]")]
    IndexOutOfRange { iota: usize, m: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("byzantine budget exceeded: more than {radius} wrong answers")]
    ByzantineBudgetExceeded { radius: usize },
    #[error("expected answers from exactly {expected} distinct servers, got {got}")]
    WrongResponderCount { expected: usize, got: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("internal error: {0}")]
    Internal(String),
    #[error(transparent)]
    Field(#[from] GfError),
    #[error(transparent)]
    Code(RsError),
}

impl From<RsError> for PirError {
    fn from(e: RsError) -> Self {
        match e {
            RsError::DecodeFailure { radius } => PirError::ByzantineBudgetExceeded { radius },
            other => PirError::Code(other),
        }
    }
}

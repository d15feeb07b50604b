use num_bigint::BigInt;
use thiserror::Error;

use crate::series::ExponentVector;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("truncation mismatch: {0}")]
    TruncationMismatch(String),

    #[error("constant term {0} is not a unit")]
    NotUnit(BigInt),

    #[error("not a deviation sequence: extracted {value} at {at}")]
    NotDeviationSequence { at: String, value: BigInt },

    #[error("product identity fails to truncation: residual {value} at {at}")]
    NonzeroResidual { at: String, value: BigInt },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("{op} requires a path or cycle graph")]
    KindMismatch { op: &'static str },

    #[error("vector {0} is not squarefree")]
    NotSquarefree(ExponentVector),

    #[error("vector {v} does not live in ambient dimension {n}")]
    AmbientMismatch { v: ExponentVector, n: usize },

    #[error("linearity violated at s={s}: {detail}")]
    LinearityViolated { s: usize, detail: String },

    #[error("invalid model variable: {0}")]
    InvalidVariable(String),

    #[error("malformed sequences: {0}")]
    MalformedSequences(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("element is not a cycle in strand ({i}, {v})")]
    NotACycle { i: usize, v: ExponentVector },

    #[error("multidegree {0} lies outside the computed range")]
    OutOfRange(ExponentVector),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

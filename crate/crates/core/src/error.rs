use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("non-finite entry {value} at ({row}, {col})")]
    NonFinite { row: usize, col: usize, value: f64 },

    #[error("expected {expected} entries, got {got}")]
    Shape { expected: usize, got: usize },

    #[error("order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("{op} requires order at least {min}, got {got}")]
    OrderTooSmall { op: &'static str, min: usize, got: usize },

    #[error("frame rank < 2")]
    FrameRankDeficient,

    #[error("entry ({row}, {col}) = {value} violates the {class} class")]
    ClassViolation { row: usize, col: usize, value: f64, class: &'static str },

    #[error("mask {mask} out of range for order {n}")]
    MaskOutOfRange { n: usize, mask: u64 },

    #[error("graph6 parse error at byte {offset}: {msg}")]
    Graph6 { offset: usize, msg: String },

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("checkpoint {path}: {msg}")]
    Checkpoint { path: PathBuf, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

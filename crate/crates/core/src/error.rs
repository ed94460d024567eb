use thiserror::Error;

use crate::code::Symbol;

/// Errors raised by code construction, verification, the outer MDS code and
/// the storage simulator.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parameter violation: {0}")]
    ParamViolation(String),

    #[error("invalid code: {0}")]
    InvalidCode(String),

    #[error("graph has no edges")]
    EmptyGraph,

    #[error("internal consistency check failed: {0}")]
    InternalCheck(String),

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("insufficient symbols: need {needed}, have {available}")]
    InsufficientSymbols { needed: usize, available: usize },

    #[error("received symbols are inconsistent with any codeword")]
    InconsistentSymbols,

    #[error("coordinate {coordinate} out of range for codeword length {theta}")]
    CoordinateOutOfRange { coordinate: usize, theta: usize },

    #[error("inner code is irregular; a DRESS code needs a strong or weak FR code")]
    IrregularCode,

    #[error("node {0} does not exist")]
    UnknownNode(usize),

    #[error("node {0} is dead")]
    DeadNodeContacted(usize),

    #[error("node {0} is already dead")]
    AlreadyDead(usize),

    #[error("node {0} has not failed")]
    NodeNotFailed(usize),

    #[error("symbol {0} has no live replica")]
    UnrepairableSymbol(Symbol),

    #[error("no one-symbol-per-helper repair plan: matched {matched} of {needed} lost symbols")]
    NoStrictPlan { matched: usize, needed: usize },

    #[error("repair report was planned against an older cluster state")]
    StaleReport,
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn violation(msg: impl Into<String>) -> Error {
    Error::ParamViolation(msg.into())
}

use thiserror::Error;

/// Which kind of line a Latin violation was found on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Line {
    Row,
    Column,
}

impl std::fmt::Display for Line {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Line::Row => f.write_str("row"),
            Line::Column => f.write_str("column"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("NotLatin {line} {index}: value {value} repeated")]
    NotLatin { line: Line, index: usize, value: usize },

    #[error("NoIdentity: {line} 0 is not the identity permutation")]
    NoIdentity { line: Line },

    #[error("Malformed: {0}")]
    Malformed(String),

    #[error("OrderTooLarge: order {order} exceeds cap {cap}")]
    OrderTooLarge { order: usize, cap: usize },

    #[error("InvalidConfig: {0}")]
    InvalidConfig(String),

    #[error("NoSquareRoot: squaring is not a bijection (order {order})")]
    NoSquareRoot { order: usize },

    #[error("NotCommutative: {x}*{y} != {y}*{x}")]
    NotCommutative { x: usize, y: usize },

    #[error("NotJordan: identity fails at x={x}, y={y}")]
    NotJordan { x: usize, y: usize },

    #[error("InconsistentPartial: {0}")]
    InconsistentPartial(String),

    #[error("CertificationFailed at stage {stage}: {detail}")]
    CertificationFailed { stage: String, detail: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

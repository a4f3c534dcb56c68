use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HeckeError {
    #[error("invalid group parameters n={n}, b={b}: {reason}")]
    InvalidParams { n: usize, b: u32, reason: &'static str },

    #[error("parameter mismatch: left operand has (n={0}, b={1}), right operand has (n={2}, b={3})")]
    ParamMismatch(usize, u32, usize, u32),

    #[error("word {0:?} is not reduced")]
    NotReduced(Vec<usize>),

    #[error("generator index {index} out of range for n={n}")]
    GeneratorOutOfRange { index: usize, n: usize },

    #[error("enumeration bound exceeded: {size} elements > bound {bound}")]
    BoundExceeded { size: u128, bound: u128 },

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("d(...) has {got} entries, expected {expected}")]
    Arity { got: usize, expected: usize },

    #[error("invalid field parameters: {0}")]
    InvalidField(String),

    #[error("n={n}, q={q} is on the slow path and was not enabled")]
    SlowPath { n: usize, q: u32 },

    #[error("Kazhdan-Lusztig solve inconsistency at x={x}, y={y}: {msg}")]
    KlInconsistency { x: String, y: String, msg: String },

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T, E = HeckeError> = std::result::Result<T, E>;

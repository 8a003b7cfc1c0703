use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("unsupported field: p = {p}, h = {h} ({reason})")]
    UnsupportedField { p: u32, h: u32, reason: &'static str },

    #[error("field element label {0} is out of range for this field")]
    ElementOutOfRange(u32),

    #[error("division by zero")]
    DivisionByZero,

    #[error("zero vector has no projective point")]
    ZeroVector,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("size guard exceeded: {what} would be {predicted}, cap is {cap}")]
    SizeGuard { what: &'static str, predicted: u128, cap: u128 },

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal invariant failed: {0}")]
    Invariant(String),
}

pub type Result<T> = core::result::Result<T, Error>;

use thiserror::Error;

/// Errors raised by the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OmqlError {
    #[error("element index {index} is out of range for a poset of {size} elements")]
    ForeignElement { index: usize, size: usize },

    #[error("unknown element `{0}`")]
    UnknownElement(String),

    #[error("unknown time point `{0}`")]
    UnknownTime(String),

    #[error("subset over a universe of {found} elements used with a poset of {expected}")]
    UniverseMismatch { expected: usize, found: usize },

    #[error("time set mismatch: expected {expected} points, found {found}")]
    TimeMismatch { expected: usize, found: usize },

    #[error("{0} requires a non-empty operand")]
    EmptyOperand(&'static str),

    #[error("{op} of `{a}` and `{b}` is undefined")]
    Partial {
        op: &'static str,
        a: String,
        b: String,
    },

    #[error("{op}: empty {direction} fiber at time point `{time}` (frame is not serial)")]
    EmptyFiber {
        op: char,
        direction: &'static str,
        time: String,
    },

    #[error("enumeration of {size} items exceeds the cap of {cap}; {advice}")]
    Capacity {
        size: u128,
        cap: u128,
        advice: &'static str,
    },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("malformed structure: {0}")]
    Malformed(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("type error: {0}")]
    Type(String),

    #[error("poset failed validation: {0}")]
    Invalid(String),
}

pub type Result<T, E = OmqlError> = std::result::Result<T, E>;

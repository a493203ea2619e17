use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown generator {name:?} at position {pos} (generators are single ASCII letters)")]
    UnknownGenerator { pos: usize, name: char },

    #[error(
        "word tuple is not balanced: generator {generator} has {positive} positive and {negative} negative letters"
    )]
    Unbalanced { generator: char, positive: usize, negative: usize },

    #[error("expected a non-trivial word")]
    TrivialWord,

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("evaluation at a pole n = {0}")]
    Pole(String),

    #[error("singular group-ring element in S_{size}: {element}")]
    Singular { size: usize, element: String },

    #[error("size {size} exceeds the oracle cap {cap}")]
    CapExceeded { size: usize, cap: usize },

    #[error("enumeration budget exceeded in {what}: visited more than {budget} matchings")]
    Budget { what: String, budget: u64 },

    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u32),

    #[error("scalar {value} is not reduced modulo {p}")]
    ScalarOutOfRange { value: u32, p: u32 },

    #[error("stable binomial requires a negative top argument, got {0}")]
    StableBinomDomain(i64),

    #[error("invalid generator: {0}")]
    InvalidGenerator(String),

    /// A rewriting rule was asked to act on a pair that is already in normal form.
    #[error("no relation applies: {0}")]
    NotApplicable(String),

    #[error("out of scope: {0}")]
    OutOfScope(String),

    #[error("parse error at column {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("shift expansions disagree for {word} at exponents {m} and {}", m + 1)]
    ShiftMismatch { word: String, m: u32 },

    #[error("derived relation disagrees with the closed form for {pair}: derived {derived}, closed form {closed}")]
    RelationMismatch {
        pair: String,
        derived: String,
        closed: String,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

use thiserror::Error;

/// Errors produced by the library.
///
/// Side-condition failures inside interval evaluation (division by a
/// zero-containing interval, square root of a negative interval, ...) are
/// *not* errors: they yield the empty interval, which propagates as a value.
/// The variants here are genuine contract violations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("denominator must be nonzero")]
    ZeroDenominator,

    #[error("division by zero")]
    DivisionByZero,

    #[error("square root bounds require a nonnegative argument")]
    NegativeSqrt,

    #[error("logarithm bounds require a positive argument")]
    NonPositiveLn,

    #[error("syntax error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("unbound variable `{0}`")]
    UnboundVariable(String),

    #[error("variable `{0}` is bound to an empty interval")]
    EmptyContextInterval(String),

    #[error("cannot differentiate: {0}")]
    UnsupportedDerivative(String),

    #[error("invalid Taylor form: {0}")]
    TaylorForm(String),

    #[error("invalid prover configuration: {0}")]
    Config(String),

    #[error("invalid certificate: {0}")]
    Certificate(String),
}

impl Error {
    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: message.into(),
        }
    }
}

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unexpected character {found:?} at byte {at}")]
    BadCharacter { at: usize, found: char },
    #[error("malformed integer {text:?} at byte {at}")]
    MalformedInteger { at: usize, text: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BudgetError {
    #[error("budget field `{0}` must be positive")]
    NonPositive(&'static str),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TorusError {
    #[error("({p}, {q}) is not a valid torus type: entries must be coprime and not both zero")]
    InvalidType { p: i64, q: i64 },
    #[error("directed path for ({p}, {q}) could not be assembled: {reason}")]
    PathAssembly { p: i64, q: i64, reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OneOneError {
    #[error("a nonzero power of s is not a (1,1)-word")]
    PurePowerOfS,
    #[error("word begins with an s-syllable; strip boundary syllables first")]
    LeadingS,
    #[error("word ends with an s-syllable; strip boundary syllables first")]
    TrailingS,
    #[error("s-free segment of {0} letters exceeds the factorization limit")]
    SegmentTooLong(usize),
    #[error(transparent)]
    Budget(#[from] BudgetError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CfError {
    #[error("continued fraction must have at least one entry")]
    Empty,
    #[error("continued fraction entries must be nonzero (entry {index})")]
    ZeroEntry { index: usize },
    #[error("division by zero while evaluating entry {index}")]
    DivisionByZero { index: usize },
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("{num}/{den} needs an odd numerator and even denominator with |num| > den")]
    Parity { num: String, den: String },
    #[error("entries do not have the {0} form")]
    FormMismatch(&'static str),
    #[error("value {0} does not fit a word exponent")]
    ExponentOverflow(String),
    #[error("malformed number {0:?}")]
    Malformed(String),
}

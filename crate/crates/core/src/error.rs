use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the library reports. The CLI prints these as `ERR:<code>: <message>`.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: {left} vs {right}")]
    RingMismatch { left: String, right: String },

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("{0} is not a unit")]
    NotUnit(String),

    #[error("no embedding from {from} into {to}")]
    NoEmbedding { from: String, to: String },

    #[error("operation needs a finite ring, got {0}")]
    InfiniteRing(String),

    #[error("unsupported ring for this operation: {0}")]
    UnsupportedRing(String),

    #[error("input is zero")]
    ZeroInput,

    #[error("input is a unit")]
    UnitInput,

    #[error("size ceiling exceeded: {0}")]
    CeilingExceeded(String),

    #[error("not a member: {0}")]
    NotMember(String),

    #[error("invalid tower: {0}")]
    InvalidTower(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("value {value} outside {range}")]
    OutOfRange { value: String, range: String },

    #[error("symbol {0:?} is not in the alphabet")]
    UnknownSymbol(char),

    #[error("not coprime: gcd({a}, {b}) = {gcd}")]
    NotCoprime { a: String, b: String, gcd: String },

    #[error("{0} is not prime")]
    NotPrime(String),

    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),

    #[error("no discrete logarithm of {target} to base {base} mod {modulus}")]
    NoLog { target: u64, base: u64, modulus: u64 },

    #[error("malformed ciphertext: {0}")]
    Ciphertext(String),

    #[error("transcript mismatch: {0}")]
    Transcript(String),
}

impl Error {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::RingMismatch { .. } => "ring-mismatch",
            Error::InvalidRing(_) => "invalid-ring",
            Error::NotUnit(_) => "not-unit",
            Error::NoEmbedding { .. } => "no-embedding",
            Error::InfiniteRing(_) => "infinite-ring",
            Error::UnsupportedRing(_) => "unsupported-ring",
            Error::ZeroInput => "zero-input",
            Error::UnitInput => "unit-input",
            Error::CeilingExceeded(_) => "ceiling-exceeded",
            Error::NotMember(_) => "not-member",
            Error::InvalidTower(_) => "invalid-tower",
            Error::Precondition(_) => "precondition",
            Error::Parse(_) => "parse",
            Error::InvalidParameter { .. } => "invalid-parameter",
            Error::OutOfRange { .. } => "out-of-range",
            Error::UnknownSymbol(_) => "unknown-symbol",
            Error::NotCoprime { .. } => "not-coprime",
            Error::NotPrime(_) => "not-prime",
            Error::AlphabetMismatch(_) => "alphabet-mismatch",
            Error::NoLog { .. } => "no-log",
            Error::Ciphertext(_) => "ciphertext",
            Error::Transcript(_) => "transcript",
        }
    }

    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}

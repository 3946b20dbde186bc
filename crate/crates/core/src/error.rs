use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cyclotomic modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),

    #[error("division by zero")]
    DivisionByZero,

    #[error("{s} is not coprime to {m}")]
    NotCoprime { s: i64, m: u64 },

    #[error("modulus {m} is not a power of {p}")]
    NotPrimePower { m: u64, p: u64 },

    #[error("group mismatch: order {0} vs {1}")]
    GroupMismatch(u64, u64),

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("element is not {p}-integral: {detail}")]
    NonIntegral { p: u64, detail: String },

    #[error("rank data is not a permutation shape at level {level}: {reason}")]
    NotPermutationShape { level: usize, reason: String },

    #[error("regulator degenerate at character j={j}: |minor| = {magnitude}")]
    RegulatorDegenerate { j: u64, magnitude: String },

    #[error("incomplete height table: {0}")]
    MissingHeight(String),

    #[error("missing data: {0}")]
    MissingData(String),

    #[error("character values are not Galois compatible: {0}")]
    GaloisIncompatible(String),

    #[error("invalid Phi matrix: {0}")]
    InvalidPhi(String),

    #[error("inconsistent input: {0}")]
    Inconsistent(String),

    #[error("schema error at `{path}`: {message}")]
    Schema { path: String, message: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("metadata fetch failed: {0}")]
    Fetch(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn schema(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Schema { path: path.into(), message: message.into() }
    }
}

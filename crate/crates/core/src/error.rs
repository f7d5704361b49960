use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("{0} is not squarefree")]
    NotSquarefree(i64),

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("polynomial is not monic")]
    NotMonic,

    #[error("polynomial has rational root {0}")]
    RationalRoot(i64),

    #[error("polynomial has a repeated factor (zero discriminant)")]
    RepeatedFactor,

    #[error("moduli differ: {0} vs {1}")]
    ModulusMismatch(u64, u64),

    #[error("polynomial is not squarefree modulo {0}")]
    NotSquarefreeModP(u64),

    #[error("{p}^2 divides disc(f) = {disc}; Dedekind criterion may be invalid at {p}")]
    IndexDivisorRisk { p: u64, disc: String },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{what} = {value} is outside the sieve range [1, {max}]")]
    OutOfRange { what: &'static str, value: u64, max: u64 },

    #[error("sieve of size {requested} exceeds the memory cap ({cap_bytes} bytes)")]
    MemoryCap { requested: u64, cap_bytes: u64 },

    #[error("exponent overflow")]
    ExponentOverflow,

    #[error("ideal count overflow at n = {0}")]
    CountOverflow(u64),

    #[error("tuple must satisfy 2 <= l_1 <= ... <= l_(m-1) < l_m with m >= 3: {0:?}")]
    Ordering(Vec<u64>),

    #[error("tuple {0:?} is not a solution")]
    NotASolution(Vec<u64>),

    #[error("{0} is not an ideal norm (a(l_m) = 0)")]
    NotANorm(u64),

    #[error("no ideal norm in [{lo}, {hi})")]
    EmptyInterval { lo: u64, hi: u64 },

    #[error("{0} lies below the smallest ideal norm greater than 1")]
    BelowFirstNorm(u64),

    #[error("m = {m} exceeds the configured cap {cap}")]
    ArityCap { m: usize, cap: usize },

    #[error("the rational field is excluded here")]
    RationalExcluded,

    #[error("{0} of the Galois closure is unknown; supply it with the ;k= / ;D= suffixes")]
    UnknownGalois(&'static str),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("no value found within the search limit {0}")]
    NotFound(u64),

    #[error("cache error: {0}")]
    Cache(String),
}

impl Error {
    pub(crate) fn syntax(position: usize, message: impl Into<String>) -> Self {
        Error::Syntax { position, message: message.into() }
    }

    /// True for resource-cap failures (distinct CLI exit status).
    pub fn is_resource_cap(&self) -> bool {
        matches!(self, Error::MemoryCap { .. } | Error::ArityCap { .. })
    }
}

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse {what}: {input:?}")]
    Parse { what: &'static str, input: String },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("determinant is {det}, expected 1")]
    NotUnimodular { det: String },

    #[error("modulus {0} is out of range")]
    BadModulus(String),

    #[error("enumeration needs cap {required}, current cap is {cap}")]
    CapExceeded { required: String, cap: u64 },

    #[error("modulus {0} is not a prime power")]
    NotPrimePower(u64),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("matrix is not congruent to the identity mod {level}")]
    NotInGamma { level: String },

    #[error("input is the identity matrix")]
    IdentityInput,

    #[error("{failures} counterexample(s), first: {first}")]
    CounterexampleFound { failures: usize, first: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Stable machine-readable name, used by the CLI on stderr.
    pub fn name(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "ParseError",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::NotUnimodular { .. } => "NotUnimodular",
            Error::BadModulus(_) => "BadModulus",
            Error::CapExceeded { .. } => "CapExceeded",
            Error::NotPrimePower(_) => "NotPrimePower",
            Error::NotPrime(_) => "NotPrime",
            Error::NotInGamma { .. } => "NotInGamma",
            Error::IdentityInput => "IdentityInput",
            Error::CounterexampleFound { .. } => "CounterexampleFound",
            Error::InvalidArgument(_) => "InvalidArgument",
        }
    }

    pub(crate) fn parse(what: &'static str, input: &str) -> Self {
        Error::Parse {
            what,
            input: input.to_string(),
        }
    }
}

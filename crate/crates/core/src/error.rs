use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NonPrimeCharacteristic(u64),
    #[error("modulus is not irreducible of degree {0} over the prime field")]
    ReducibleModulus(u32),
    #[error("field of size {p}^{m} is too large to represent")]
    FieldTooLarge { p: u32, m: u32 },
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("zero polynomial has no factorization")]
    ZeroPolynomial,

    #[error("singular model: {0}")]
    SingularModel(String),
    #[error("model is geometrically reducible: {0}")]
    GeometricallyReducible(String),
    #[error("unsupported model: {0}")]
    UnsupportedModel(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("oracle does not support this model: {0}")]
    OracleUnsupportedModel(String),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),

    #[error("unsupported case: {0}")]
    UnsupportedCase(String),
    #[error("unknown closed point id {0:?}")]
    UnknownPoint(String),
    #[error("S and T must be disjoint; {0} is in both")]
    OverlappingMarks(String),
    #[error("inconsistent input: {0}")]
    InconsistentInput(String),
    #[error("p = {p} divides q = {q}")]
    CharacteristicClash { p: u64, q: u64 },

    #[error("group generated by the matrices is not finite within the cap of {0} elements")]
    NotFinite(usize),
    #[error("matrix is not invertible over the integers")]
    NotInvertible,
    #[error("integer overflow in exact matrix arithmetic")]
    Overflow,
}

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded(_))
    }
}

use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("infinite valuation: the valuation of zero is undefined")]
    InfiniteValuation,

    #[error("{0} is not prime")]
    NotPrime(BigInt),

    #[error("{0} is outside the supported range (integers below 2^64 after trial division)")]
    OutOfRange(BigInt),

    #[error("zero has no prime factorization")]
    FactorZero,

    #[error("failed to split {0}")]
    FactorizationFailed(BigInt),

    #[error("modulus must be greater than one, got {0}")]
    InvalidModulus(BigInt),

    #[error("moduli {0} and {1} are not coprime; merge the congruences first")]
    NonCoprimeModuli(BigInt, BigInt),

    #[error("inconsistent congruences modulo {0} and {1}")]
    InconsistentCongruences(BigInt, BigInt),

    #[error("variable count mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),

    #[error("the zero polynomial is not allowed here")]
    ZeroPolynomial,

    #[error("constant polynomial: irreducibility is only decided for nonconstant inputs")]
    ConstantPolynomial,

    #[error("the full basis is infinite: give a finite degree vector, a total-degree bound or a count")]
    UnboundedBasis,

    #[error("basis exhausted: {points} points but only {basis} basis monomials")]
    BasisExhausted { points: usize, basis: usize },

    #[error("the point set is empty")]
    EmptySet,

    #[error("duplicate point {0} in a finite point set")]
    DuplicatePoint(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("polynomial vanishes on the whole set: zero fixed divisor")]
    ZeroFixedDivisor,

    #[error("not integer-valued: f{point} = {value}")]
    NotMember { point: String, value: String },

    #[error("sequence exhausted after {got} points, {needed} needed; use a finite point set for direct evaluation")]
    SequenceExhausted { needed: usize, got: usize },

    #[error("search inconclusive at step {step}: no certified minimizer within box bound {bound}")]
    SearchInconclusive { step: usize, bound: u64 },

    #[error("recombination limit exceeded: {0} modular factors")]
    RecombinationLimit(usize),
}

impl Error {
    /// True for outcomes caused by search limits rather than bad input.
    pub fn is_inconclusive(&self) -> bool {
        matches!(
            self,
            Error::SearchInconclusive { .. } | Error::RecombinationLimit(_)
        )
    }
}

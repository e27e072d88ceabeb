use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("denominator is zero")]
    ZeroDenominator,
    #[error("argument must be nonzero")]
    ZeroArgument,
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {0} is too small: only p > 3 is supported")]
    PrimeTooSmall(u64),
    #[error("operands carry different primes ({0} and {1})")]
    PrimeMismatch(u64, u64),
    #[error("value is not a p-adic integer (valuation {0})")]
    NotIntegral(i64),
    #[error("residue is zero modulo p")]
    ZeroResidue,
    #[error("cubic coefficients a and b must both be nonzero")]
    ZeroCoefficient,
    #[error("exhaustive scan over {size} elements exceeds the configured bound {bound}")]
    ScanBoundExceeded { size: u128, bound: u64 },
    #[error("seed is a singular root modulo p (f'(r0) = 0 mod p)")]
    SingularSeed,
    #[error("series does not converge at this seed: ord_p(c0/c1^2) = {0} < 1")]
    NonconvergentSeed(i64),
    #[error("discriminant is nonzero, the cubic has no repeated root")]
    NotDoubleRoot,
    #[error("discriminant is zero")]
    ZeroDiscriminant,
    #[error("degenerate construction: {0}")]
    DegenerateConstruction(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

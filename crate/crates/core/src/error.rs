//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("enumeration budget exceeded: n = {n}, budget = {budget}")]
    EnumerationBudget { n: usize, budget: usize },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("odd prime required, got {0}")]
    OddPrimeRequired(u64),

    #[error("statistic undefined: {0}")]
    UndefinedStatistic(String),

    #[error("polynomial is identically zero")]
    ZeroPolynomial,

    #[error("polynomial is not squarefree (gcd witness of degree {gcd_degree})")]
    NotSquarefree { gcd_degree: usize },

    #[error("polynomial is not real-rooted ({distinct_real} distinct real roots, squarefree degree {degree})")]
    NotRealRooted { distinct_real: usize, degree: usize },

    #[error("positive root detected; Bernoulli factorization requires roots <= 0")]
    PositiveRoot,

    #[error("coefficients must be nonnegative with positive value at 1")]
    NotAProbabilityPolynomial,

    #[error("negative Samuelson radicand {0}: input cannot be real-rooted")]
    NegativeRadicand(String),

    #[error("denominator of f_{k} does not factor as (kx-1)((k-1)x-1)^2...(x-1)^k")]
    WardFactorizationMismatch { k: usize },

    #[error("principal part mismatch for f_{k}: {detail}")]
    PrincipalPartMismatch { k: usize, detail: String },

    #[error("series expansion requires a nonzero constant term in the denominator")]
    PoleAtOrigin,

    #[error("bracket refinement budget exhausted at n = {n}")]
    RefinementBudget { n: usize },

    #[error("negative input {0} is outside the principal Lambert branch domain")]
    LambertDomain(f64),

    #[error("cache line {line}: {msg}")]
    CacheParse { line: usize, msg: String },

    #[error("cache row fails recurrence verification: kind {kind}, n = {n}")]
    CacheVerify { kind: String, n: usize },

    #[error("b-file line {line}: {msg}")]
    BFileParse { line: usize, msg: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

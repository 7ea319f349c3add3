use thiserror::Error;

/// Errors produced by the library.
///
/// `Falsified` is reserved for internal cross-checks whose failure would mean
/// the implementation or its tables are wrong, not that the input was bad.
#[derive(Debug, Error)]
pub enum Error {
    #[error("valuation of zero undefined")]
    ZeroValuation,

    #[error("not a unit: gcd({x}, {m}) != 1")]
    NotAUnit { x: String, m: u64 },

    #[error("evaluation not integral: {0}")]
    NotIntegral(String),

    #[error("invalid group specification: {0}")]
    InvalidGroup(String),

    #[error("invalid q: {0}")]
    InvalidQ(String),

    #[error("ℓ must differ from the defining characteristic (ℓ = p = {0})")]
    EllEqualsP(u64),

    #[error("Weyl enumeration cap exceeded: |W| = {order} > cap {cap}; raise GENSYLOW_WEYL_CAP or use the degree tables")]
    CapExceeded { order: u64, cap: u64 },

    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("{0}")]
    Unsupported(String),

    #[error("internal cross-check failed: {0}")]
    Falsified(String),

    #[error("parse error: {0}")]
    Parse(String),
}

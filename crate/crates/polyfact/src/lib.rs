//! Exact enumeration of polynomial factorizations over finite fields.
//!
//! The crate computes divisor counts `Φ(s)`, constrained factorization counts
//! `Φ_{n,n'}(s)`, the extremal values `Υ_m` and `Υ_{n,n}` with witness
//! profiles, exact moment formulas, and generating-function tail bounds for
//! polynomials over GF(q).  Every closed form is cross-validated against an
//! independent brute-force oracle at desk scale.
//!
//! The primary interface is the `examples/` directory; each example is a
//! runnable tour of one capability:
//!
//! ```text
//! cargo run -p polyfact --example divisor_counts
//! cargo run -p polyfact --example irreducible_census
//! cargo run -p polyfact --example extremal_search
//! cargo run -p polyfact --example structure_and_moves
//! cargo run -p polyfact --example moment_formulas
//! cargo run -p polyfact --example tail_bounds
//! ```
//!
//! A thin batch CLI (`polyfact`) exposes the same computations with CSV/JSON
//! output; see the crate README for the subcommand list.

pub mod cli;
pub mod divisors;
pub mod extremal;
pub mod field;
pub mod irred;
pub mod moments;
pub mod poly;
pub mod tail;

/// Errors shared by all modules.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    NotPrime(u64),
    #[error("modulus must be a monic irreducible of degree {expected} over GF({p})")]
    BadModulus { p: u64, expected: u32 },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("polynomial must be monic and nonzero")]
    NotMonic,
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("enumeration of size {size} exceeds budget {budget}")]
    BudgetExceeded { size: u128, budget: u128 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("move not applicable: {0}")]
    Inapplicable(String),
    #[error("verification mismatch: {0}")]
    Mismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
